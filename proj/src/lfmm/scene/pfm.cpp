#include "lfmm/scene/pfm.hpp"

#include "lfmm/core/error.hpp"
#include "lfmm/scene/camera.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace lfmm::scene {

namespace {

std::uint32_t byteswap32(std::uint32_t x) {
  return ((x & 0xFFu) << 24) | ((x & 0xFF00u) << 8) | ((x >> 8) & 0xFF00u) | (x >> 24);
}

std::string read_token(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) fail(ErrorCode::MalformedHeader, "PFM: truncated header");
  return tok;
}

}  // namespace

void write_pfm(std::ostream& out, const PfmImage& image) {
  out << "Pf\n" << image.width << ' ' << image.height << "\n-1.0\n";
  for (int row = image.height - 1; row >= 0; --row) {
    for (int col = 0; col < image.width; ++col) {
      std::uint32_t bits = std::bit_cast<std::uint32_t>(
          image.pixels[static_cast<std::size_t>(row) * image.width + col]);
      if constexpr (std::endian::native == std::endian::big) bits = byteswap32(bits);
      char bytes[4];
      std::memcpy(bytes, &bits, 4);
      out.write(bytes, 4);
    }
  }
}

PfmImage read_pfm(std::istream& in) {
  const std::string magic = read_token(in);
  if (magic != "Pf") fail(ErrorCode::MalformedHeader, "PFM: expected grayscale 'Pf' header");
  PfmImage img;
  try {
    img.width = std::stoi(read_token(in));
    img.height = std::stoi(read_token(in));
  } catch (const std::logic_error&) {
    fail(ErrorCode::MalformedHeader, "PFM: bad dimensions");
  }
  double scale = 0.0;
  try {
    scale = std::stod(read_token(in));
  } catch (const std::logic_error&) {
    fail(ErrorCode::MalformedHeader, "PFM: bad scale");
  }
  if (img.width <= 0 || img.height <= 0 || scale == 0.0) {
    fail(ErrorCode::MalformedHeader, "PFM: invalid header values");
  }
  in.get();  // single whitespace byte after the scale
  const bool little = scale < 0.0;
  const bool swap = little != (std::endian::native == std::endian::little);
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  for (int row = img.height - 1; row >= 0; --row) {
    for (int col = 0; col < img.width; ++col) {
      char bytes[4];
      if (!in.read(bytes, 4)) fail(ErrorCode::Parse, "PFM: truncated pixel data");
      std::uint32_t bits;
      std::memcpy(&bits, bytes, 4);
      if (swap) bits = byteswap32(bits);
      img.pixels[static_cast<std::size_t>(row) * img.width + col] = std::bit_cast<float>(bits);
    }
  }
  return img;
}

void save_pfm(const std::filesystem::path& path, const PfmImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  write_pfm(out, image);
}

PfmImage load_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  return read_pfm(in);
}

PfmImage to_pfm(const DepthView& view) {
  PfmImage img{view.camera.width, view.camera.height, {}};
  img.pixels.reserve(view.depth.size());
  for (double d : view.depth) img.pixels.push_back(static_cast<float>(d));
  return img;
}

void assign_depth(DepthView& view, const PfmImage& image) {
  if (image.width != view.camera.width || image.height != view.camera.height) {
    fail(ErrorCode::InvalidArgument, "PFM size does not match camera");
  }
  view.depth.assign(image.pixels.begin(), image.pixels.end());
}

}  // namespace lfmm::scene
