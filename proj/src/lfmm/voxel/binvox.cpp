#include "lfmm/voxel/binvox.hpp"

#include "lfmm/core/error.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

namespace lfmm::voxel {

void write_binvox(std::ostream& out, const VoxelGrid& grid) {
  if (!grid.is_binary()) fail(ErrorCode::InvalidArgument, "binvox requires a binary grid");
  const int d = grid.dim;
  out << "#binvox 1\n";
  out << "dim " << d << ' ' << d << ' ' << d << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "translate " << grid.frame.origin.x() << ' ' << grid.frame.origin.y() << ' '
      << grid.frame.origin.z() << '\n';
  out << "scale " << grid.frame.voxel_size * d << '\n';
  out << "data\n";

  int run_value = -1;
  int run_length = 0;
  auto flush = [&] {
    if (run_length > 0) {
      out.put(static_cast<char>(run_value));
      out.put(static_cast<char>(run_length));
    }
  };
  for (int x = 0; x < d; ++x) {
    for (int z = 0; z < d; ++z) {
      for (int y = 0; y < d; ++y) {
        const int value = grid.at(x, y, z) > 0.5 ? 1 : 0;
        if (value == run_value && run_length < 255) {
          ++run_length;
        } else {
          flush();
          run_value = value;
          run_length = 1;
        }
      }
    }
  }
  flush();
}

VoxelGrid read_binvox(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("#binvox", 0) != 0) {
    fail(ErrorCode::MalformedHeader, "binvox: missing '#binvox' magic");
  }
  int dims[3] = {0, 0, 0};
  bool have_dim = false;
  Vec3 translate = Vec3::Zero();
  double scale = 1.0;
  while (true) {
    if (!std::getline(in, line)) fail(ErrorCode::MalformedHeader, "binvox: header ended before 'data'");
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "data") break;
    if (key == "dim") {
      ss >> dims[0] >> dims[1] >> dims[2];
      have_dim = !ss.fail();
    } else if (key == "translate") {
      ss >> translate.x() >> translate.y() >> translate.z();
    } else if (key == "scale") {
      ss >> scale;
    } else {
      fail(ErrorCode::MalformedHeader, "binvox: unknown header line '" + line + "'");
    }
    if (ss.fail()) fail(ErrorCode::MalformedHeader, "binvox: bad header line '" + line + "'");
  }
  if (!have_dim || dims[0] <= 0 || dims[0] != dims[1] || dims[1] != dims[2]) {
    fail(ErrorCode::MalformedHeader, "binvox: only cubic grids with positive dim are supported");
  }
  if (!(scale > 0.0)) fail(ErrorCode::MalformedHeader, "binvox: scale must be positive");

  const int d = dims[0];
  VoxelGrid grid(d, GridFrame{translate, scale / d});
  const std::size_t total = grid.size();
  std::size_t pos = 0;
  while (pos < total) {
    const int value = in.get();
    const int count = in.get();
    if (value == std::char_traits<char>::eof() || count == std::char_traits<char>::eof()) {
      fail(ErrorCode::RleOverrun, "binvox: payload truncated after " + std::to_string(pos) + " voxels");
    }
    if (count == 0 || pos + static_cast<std::size_t>(count) > total) {
      fail(ErrorCode::RleOverrun, "binvox: run overflows the grid");
    }
    for (int k = 0; k < count; ++k, ++pos) {
      if (value == 0) continue;
      // pos enumerates x slowest, z, then y fastest.
      const int y = static_cast<int>(pos % d);
      const int z = static_cast<int>((pos / d) % d);
      const int x = static_cast<int>(pos / (static_cast<std::size_t>(d) * d));
      grid.at(x, y, z) = 1.0;
    }
  }
  return grid;
}

void save_binvox(const std::filesystem::path& path, const VoxelGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  write_binvox(out, grid);
  if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
}

VoxelGrid load_binvox(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  return read_binvox(in);
}

}  // namespace lfmm::voxel
