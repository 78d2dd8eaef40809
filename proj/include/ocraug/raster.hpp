#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ocraug {

/// Interleaved 8-bit image, row-major, `channels` bytes per pixel.
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  Raster() = default;
  Raster(int w, int h, int c, std::uint8_t fill = 0);

  bool empty() const { return width <= 0 || height <= 0; }
  std::size_t stride() const { return static_cast<std::size_t>(width) * channels; }

  std::uint8_t& at(int x, int y, int c = 0) {
    return data[static_cast<std::size_t>(y) * stride() + static_cast<std::size_t>(x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return data[static_cast<std::size_t>(y) * stride() + static_cast<std::size_t>(x) * channels + c];
  }
  std::span<std::uint8_t> pixel(int x, int y) {
    return {&at(x, y), static_cast<std::size_t>(channels)};
  }

  friend bool operator==(const Raster&, const Raster&) = default;
};

constexpr int kMaxChannels = 4;

// Bilinear sample at continuous index coordinates (x, y), where integer
// coordinates are pixel centres. Taps outside the raster are clamped to the
// nearest edge pixel.
void sample_bilinear_clamped(const Raster& img, double x, double y, double* out);

// As above, but taps outside the raster contribute zero.
void sample_bilinear_zero(const Raster& img, double x, double y, double* out);

// Rounds half away from zero and clamps into [0, 255].
std::uint8_t to_byte(double v);

}  // namespace ocraug
