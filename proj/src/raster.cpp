#include "ocraug/raster.hpp"

#include <algorithm>
#include <cmath>

namespace ocraug {

Raster::Raster(int w, int h, int c, std::uint8_t fill)
    : width(w), height(h), channels(c),
      data(static_cast<std::size_t>(std::max(w, 0)) * std::max(h, 0) * c, fill) {}

std::uint8_t to_byte(double v) {
  const double r = std::round(v);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

void sample_bilinear_clamped(const Raster& img, double x, double y, double* out) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const double ax = x - fx;
  const double ay = y - fy;
  const int x0 = std::clamp(static_cast<int>(fx), 0, img.width - 1);
  const int x1 = std::clamp(static_cast<int>(fx) + 1, 0, img.width - 1);
  const int y0 = std::clamp(static_cast<int>(fy), 0, img.height - 1);
  const int y1 = std::clamp(static_cast<int>(fy) + 1, 0, img.height - 1);
  for (int c = 0; c < img.channels; ++c) {
    const double top = img.at(x0, y0, c) + ax * (img.at(x1, y0, c) - img.at(x0, y0, c));
    const double bot = img.at(x0, y1, c) + ax * (img.at(x1, y1, c) - img.at(x0, y1, c));
    out[c] = top + ay * (bot - top);
  }
}

void sample_bilinear_zero(const Raster& img, double x, double y, double* out) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const double ax = x - fx;
  const double ay = y - fy;
  const auto x0 = static_cast<long>(fx);
  const auto y0 = static_cast<long>(fy);
  auto tap = [&](long xi, long yi, int c) -> double {
    if (xi < 0 || yi < 0 || xi >= img.width || yi >= img.height) return 0.0;
    return img.at(static_cast<int>(xi), static_cast<int>(yi), c);
  };
  for (int c = 0; c < img.channels; ++c) {
    const double p00 = tap(x0, y0, c);
    const double p10 = tap(x0 + 1, y0, c);
    const double p01 = tap(x0, y0 + 1, c);
    const double p11 = tap(x0 + 1, y0 + 1, c);
    const double top = p00 + ax * (p10 - p00);
    const double bot = p01 + ax * (p11 - p01);
    out[c] = top + ay * (bot - top);
  }
}

}  // namespace ocraug
