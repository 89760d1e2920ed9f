#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace lfmm::scene {

struct DepthView;

// Single-channel float raster as stored in a PFM file. Row 0 is the top row;
// the file stores rows bottom-up.
struct PfmImage {
  int width = 0;
  int height = 0;
  std::vector<float> pixels;
};

// Writes "Pf" with scale -1 (little-endian).
void write_pfm(std::ostream& out, const PfmImage& image);
PfmImage read_pfm(std::istream& in);
void save_pfm(const std::filesystem::path& path, const PfmImage& image);
PfmImage load_pfm(const std::filesystem::path& path);

// Depth stored as float32; misses stay +inf.
PfmImage to_pfm(const DepthView& view);
// Replaces view.depth with the image contents; sizes must match the camera.
void assign_depth(DepthView& view, const PfmImage& image);

}  // namespace lfmm::scene
