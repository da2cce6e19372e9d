#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace fsot {

/// Raster with values in [0,1], row 0 at the top, channels interleaved.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;  // 1 (gray) or 3 (RGB)
  std::vector<double> data;

  double at(int x, int y, int c = 0) const {
    return data[(std::size_t(y) * std::size_t(width) + std::size_t(x)) * std::size_t(channels) + std::size_t(c)];
  }
  double& at(int x, int y, int c = 0) {
    return data[(std::size_t(y) * std::size_t(width) + std::size_t(x)) * std::size_t(channels) + std::size_t(c)];
  }
};

/// Netpbm reader: P2/P5 (gray) and P3/P6 (RGB), 8- or 16-bit.
Image read_image(const std::filesystem::path& path);

/// 8-bit binary PGM of a single-channel image, values clamped to [0,1].
void write_pgm(const std::filesystem::path& path, const Image& image);

/// Luminance (Rec. 601 weights) of an RGB image; gray images are returned as is.
Image to_gray(const Image& image);

}  // namespace fsot
