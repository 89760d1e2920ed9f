#include "lfmm/voxel/score_io.hpp"

#include "lfmm/core/error.hpp"
#include "lfmm/voxel/binvox.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lfmm::voxel {

namespace {

void put_le(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(b, 8);
}

double get_le(const unsigned char* b) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_scores(std::ostream& out, const VoxelGrid& g) {
  out << "#lfmm-scores 1\n";
  out << "dim " << g.dim << ' ' << g.dim << ' ' << g.dim << '\n';
  out << std::setprecision(17) << "translate " << g.frame.origin.x() << ' ' << g.frame.origin.y() << ' '
      << g.frame.origin.z() << '\n';
  out << "scale " << g.frame.voxel_size * g.dim << '\n' << "data\n";
  for (double s : g.scores) put_le(out, s);
  if (!out) fail(ErrorCode::Io, "failed writing score grid");
}

VoxelGrid read_scores(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "#lfmm-scores 1") fail(ErrorCode::MalformedHeader, "missing #lfmm-scores 1 magic");
  int dim = 0;
  Vec3 t = Vec3::Zero();
  double scale = 0.0;
  bool has_dim = false, has_t = false, has_s = false;
  while (std::getline(in, line)) {
    if (line == "data") break;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "dim") {
      int a = 0, b = 0, c = 0;
      if (!(ls >> a >> b >> c) || a != b || b != c || a < 1) fail(ErrorCode::MalformedHeader, "bad dim line");
      dim = a;
      has_dim = true;
    } else if (key == "translate") {
      if (!(ls >> t.x() >> t.y() >> t.z())) fail(ErrorCode::MalformedHeader, "bad translate line");
      has_t = true;
    } else if (key == "scale") {
      if (!(ls >> scale) || !(scale > 0)) fail(ErrorCode::MalformedHeader, "bad scale line");
      has_s = true;
    } else {
      fail(ErrorCode::MalformedHeader, "unexpected header line '" + line + "'");
    }
  }
  if (line != "data" || !has_dim || !has_t || !has_s) fail(ErrorCode::MalformedHeader, "incomplete score header");
  VoxelGrid g(dim, GridFrame{t, scale / dim}, 0.0);
  std::vector<unsigned char> buf(g.size() * 8);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size())) fail(ErrorCode::Parse, "truncated score data");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double s = get_le(buf.data() + 8 * i);
    if (!(s >= 0.0 && s <= 1.0)) fail(ErrorCode::Parse, "score outside [0, 1]");
    g.scores[i] = s;
  }
  return g;
}

void save_scores(const std::filesystem::path& path, const VoxelGrid& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  write_scores(out, g);
}

VoxelGrid load_scores(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  return read_scores(in);
}

VoxelGrid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::string first;
  std::getline(in, first);
  in.close();
  if (first == "#lfmm-scores 1") return load_scores(path);
  return load_binvox(path);
}

}  // namespace lfmm::voxel
