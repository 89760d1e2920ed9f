#include "lfmm/scene/mesh.hpp"

#include "lfmm/core/error.hpp"
#include "lfmm/scene/pose.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace lfmm::scene {

double TriMesh::triangle_area(std::size_t tri) const {
  const Vec3 a = corner(tri, 0);
  return 0.5 * (corner(tri, 1) - a).cross(corner(tri, 2) - a).norm();
}

double TriMesh::surface_area() const {
  double total = 0.0;
  for (std::size_t i = 0; i < triangles.size(); ++i) total += triangle_area(i);
  return total;
}

double TriMesh::signed_volume() const {
  double total = 0.0;
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    total += corner(i, 0).dot(corner(i, 1).cross(corner(i, 2)));
  }
  return total / 6.0;
}

std::pair<Vec3, Vec3> TriMesh::bounds() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Vec3 lo = Vec3::Constant(inf);
  Vec3 hi = Vec3::Constant(-inf);
  for (const Vec3& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return {lo, hi};
}

void validate(const TriMesh& mesh) {
  for (const Vec3& v : mesh.vertices) {
    if (!v.allFinite()) fail(ErrorCode::InvalidArgument, "mesh has a non-finite vertex");
  }
  for (const Triangle& t : mesh.triangles) {
    for (auto idx : t) {
      if (idx >= mesh.vertices.size()) {
        fail(ErrorCode::InvalidArgument, "triangle index " + std::to_string(idx) + " out of range");
      }
    }
  }
}

std::size_t drop_degenerate(TriMesh& mesh, double area_eps) {
  std::vector<Triangle> kept;
  kept.reserve(mesh.triangles.size());
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    if (mesh.triangle_area(i) > area_eps) kept.push_back(mesh.triangles[i]);
  }
  const std::size_t removed = mesh.triangles.size() - kept.size();
  mesh.triangles = std::move(kept);
  return removed;
}

TriMesh transformed(const TriMesh& mesh, const Pose& pose) {
  TriMesh out = mesh;
  for (Vec3& v : out.vertices) v = pose.apply(v);
  return out;
}

void append(TriMesh& a, const TriMesh& b) {
  const auto offset = static_cast<std::uint32_t>(a.vertices.size());
  a.vertices.insert(a.vertices.end(), b.vertices.begin(), b.vertices.end());
  for (Triangle t : b.triangles) {
    for (auto& idx : t) idx += offset;
    a.triangles.push_back(t);
  }
}

namespace {

// Tokenizer over OFF content that skips '#' comments and tracks line numbers.
class OffTokens {
 public:
  explicit OffTokens(std::istream& in) : in_(in) {}

  bool next(std::string& tok) {
    while (true) {
      if (line_stream_ >> tok) return true;
      std::string line;
      if (!std::getline(in_, line)) return false;
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line_stream_.clear();
      line_stream_.str(line);
    }
  }

  // Reads the next token of the current or following lines and parses it.
  template <typename T>
  T expect(const char* what) {
    std::string tok;
    if (!next(tok)) error(std::string("unexpected end of file, expected ") + what);
    std::istringstream ss(tok);
    T value{};
    ss >> value;
    if (ss.fail() || !ss.eof()) error(std::string("expected ") + what + ", got '" + tok + "'");
    return value;
  }

  // Discards the remainder of the current line (face colors etc.).
  void skip_line() {
    line_stream_.clear();
    line_stream_.str("");
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::Parse, "OFF line " + std::to_string(line_no_) + ": " + msg);
  }

 private:
  std::istream& in_;
  std::istringstream line_stream_;
  int line_no_ = 0;
};

}  // namespace

TriMesh read_off(std::istream& in) {
  OffTokens tok(in);
  std::string header;
  if (!tok.next(header)) tok.error("empty file");
  if (header != "OFF") tok.error("missing OFF header, got '" + header + "'");

  const auto nv = tok.expect<long long>("vertex count");
  const auto nf = tok.expect<long long>("face count");
  tok.expect<long long>("edge count");
  if (nv < 0 || nf < 0) tok.error("negative element count");

  TriMesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(nv));
  for (long long i = 0; i < nv; ++i) {
    Vec3 v;
    v.x() = tok.expect<double>("vertex x");
    v.y() = tok.expect<double>("vertex y");
    v.z() = tok.expect<double>("vertex z");
    if (!v.allFinite()) tok.error("non-finite vertex coordinate");
    mesh.vertices.push_back(v);
  }
  std::size_t polygon_tris = 0;
  for (long long f = 0; f < nf; ++f) {
    const auto n = tok.expect<long long>("face vertex count");
    if (n < 3) tok.error("face with fewer than 3 vertices");
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(n));
    for (auto& i : idx) {
      const auto raw = tok.expect<long long>("face index");
      if (raw < 0 || raw >= nv) tok.error("face index " + std::to_string(raw) + " out of range");
      i = static_cast<std::uint32_t>(raw);
    }
    tok.skip_line();
    for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
      mesh.triangles.push_back({idx[0], idx[k], idx[k + 1]});
      ++polygon_tris;
    }
  }
  drop_degenerate(mesh);
  if (polygon_tris > 0 && mesh.triangles.empty()) {
    fail(ErrorCode::Parse, "OFF: every face is degenerate");
  }
  return mesh;
}

TriMesh load_off(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  return read_off(in);
}

void write_off(std::ostream& out, const TriMesh& mesh) {
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const Vec3& v : mesh.vertices) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const Triangle& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void save_off(const std::filesystem::path& path, const TriMesh& mesh) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  write_off(out, mesh);
  if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace lfmm::scene
