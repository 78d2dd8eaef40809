#include "ocraug/extract.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ocraug/errors.hpp"

namespace ocraug {

std::array<Vec2, 4> RotatedRect::corners() const {
  const double a = deg_to_rad(angle_deg);
  const Vec2 u(std::cos(a), std::sin(a));
  const Vec2 v(-u.y(), u.x());
  const Vec2 hu = u * (width / 2.0);
  const Vec2 hv = v * (height / 2.0);
  return {center - hu - hv, center + hu - hv, center + hu + hv, center - hu + hv};
}

double RotatedRect::outside_distance(const Vec2& p) const {
  const double a = deg_to_rad(angle_deg);
  const Vec2 u(std::cos(a), std::sin(a));
  const Vec2 v(-u.y(), u.x());
  const Vec2 d = p - center;
  const double du = std::max(0.0, std::abs(d.dot(u)) - width / 2.0);
  const double dv = std::max(0.0, std::abs(d.dot(v)) - height / 2.0);
  return std::hypot(du, dv);
}

bool check_containment(const Quad2D& quad, int frame_w, int frame_h) {
  const double max_x = frame_w - 1.0;
  const double max_y = frame_h - 1.0;
  return std::all_of(quad.corners.begin(), quad.corners.end(), [&](const Vec2& c) {
    return c.x() >= 0.0 && c.x() <= max_x && c.y() >= 0.0 && c.y() <= max_y;
  });
}

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Andrew's monotone chain; collinear points are dropped.
std::vector<Vec2> convex_hull(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double normalise_angle(double deg) {
  while (deg > 90.0) deg -= 180.0;
  while (deg <= -90.0) deg += 180.0;
  return deg;
}

}  // namespace

RotatedRect min_area_rect(std::span<const Vec2> points) {
  const std::vector<Vec2> hull = convex_hull(points);
  double hull_area = 0.0;
  for (std::size_t i = 0; hull.size() >= 3 && i < hull.size(); ++i) {
    const Vec2& a = hull[i];
    const Vec2& b = hull[(i + 1) % hull.size()];
    hull_area += a.x() * b.y() - b.x() * a.y();
  }
  if (hull.size() < 3 || !(std::abs(hull_area) > 1e-12)) {
    throw DegenerateGeometryError("min_area_rect: points are collinear");
  }

  // The optimum has one side collinear with a hull edge.
  RotatedRect best;
  double best_area = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2 edge = hull[(i + 1) % hull.size()] - hull[i];
    const Vec2 u = edge.normalized();
    const Vec2 v(-u.y(), u.x());
    double min_u = std::numeric_limits<double>::infinity(), max_u = -min_u;
    double min_v = min_u, max_v = -min_u;
    for (const auto& p : hull) {
      const double pu = p.dot(u);
      const double pv = p.dot(v);
      min_u = std::min(min_u, pu);
      max_u = std::max(max_u, pu);
      min_v = std::min(min_v, pv);
      max_v = std::max(max_v, pv);
    }
    const double area = (max_u - min_u) * (max_v - min_v);
    if (area < best_area) {
      best_area = area;
      best.center = u * ((min_u + max_u) / 2.0) + v * ((min_v + max_v) / 2.0);
      best.width = max_u - min_u;
      best.height = max_v - min_v;
      best.angle_deg = rad_to_deg(std::atan2(u.y(), u.x()));
    }
  }
  if (best.width < best.height) {
    std::swap(best.width, best.height);
    best.angle_deg += 90.0;
  }
  best.angle_deg = normalise_angle(best.angle_deg);
  return best;
}

RotatedRect min_area_rect(const Quad2D& quad) { return min_area_rect(std::span<const Vec2>(quad.corners)); }

namespace {

// Value of pixel (px, py) of the compensated frame.
struct RotationSampler {
  const Raster& src;
  double cx, cy, cos_a, sin_a;

  RotationSampler(const Raster& frame, const RotatedRect& rect)
      : src(frame), cx(rect.center.x()), cy(rect.center.y()),
        cos_a(std::cos(deg_to_rad(rect.angle_deg))), sin_a(std::sin(deg_to_rad(rect.angle_deg))) {}

  void operator()(int px, int py, std::uint8_t* dst) const {
    const double qx = px + 0.5 - cx;
    const double qy = py + 0.5 - cy;
    const double sx = cx + cos_a * qx - sin_a * qy;
    const double sy = cy + sin_a * qx + cos_a * qy;
    double v[kMaxChannels];
    sample_bilinear_zero(src, sx - 0.5, sy - 0.5, v);
    for (int c = 0; c < src.channels; ++c) dst[c] = to_byte(v[c]);
  }
};

struct CropBox {
  int x0, y0, w, h;
};

CropBox crop_box(const Raster& img, const RotatedRect& rect) {
  const int w = static_cast<int>(std::lround(rect.width));
  const int h = static_cast<int>(std::lround(rect.height));
  if (w < 1 || h < 1) throw ExtractionError("crop box is empty");
  const double fx0 = std::floor(rect.center.x() - w / 2.0 + 0.5);
  const double fy0 = std::floor(rect.center.y() - h / 2.0 + 0.5);
  if (fx0 < 0.0 || fy0 < 0.0 || fx0 + w > img.width || fy0 + h > img.height) {
    throw ExtractionError("crop box exceeds raster bounds");
  }
  return {static_cast<int>(fx0), static_cast<int>(fy0), w, h};
}

}  // namespace

Raster compensate_rotation(const Raster& frame, const RotatedRect& rect) {
  if (rect.angle_deg == 0.0) return frame;
  Raster out(frame.width, frame.height, frame.channels, 0);
  const RotationSampler sample(frame, rect);
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) sample(x, y, &out.at(x, y));
  }
  return out;
}

Raster crop_rect(const Raster& compensated, const RotatedRect& rect) {
  const CropBox box = crop_box(compensated, rect);
  Raster out(box.w, box.h, compensated.channels);
  const std::size_t row_bytes = static_cast<std::size_t>(box.w) * compensated.channels;
  for (int y = 0; y < box.h; ++y) {
    const std::uint8_t* src = compensated.data.data() +
                              static_cast<std::size_t>(box.y0 + y) * compensated.stride() +
                              static_cast<std::size_t>(box.x0) * compensated.channels;
    std::copy(src, src + row_bytes, out.data.begin() + static_cast<std::ptrdiff_t>(y * row_bytes));
  }
  return out;
}

Raster rotate_and_crop(const Raster& frame, const RotatedRect& rect) {
  if (rect.angle_deg == 0.0) return crop_rect(frame, rect);
  const CropBox box = crop_box(frame, rect);
  Raster out(box.w, box.h, frame.channels);
  const RotationSampler sample(frame, rect);
  for (int y = 0; y < box.h; ++y) {
    for (int x = 0; x < box.w; ++x) sample(box.x0 + x, box.y0 + y, &out.at(x, y));
  }
  return out;
}

namespace {

double catmull_rom(double x) {
  constexpr double a = -0.5;
  x = std::abs(x);
  if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
  return 0.0;
}

struct Taps {
  std::vector<int> index;      // 4 per output sample
  std::vector<double> weight;  // 4 per output sample
};

Taps make_taps(int in_size, int out_size) {
  Taps taps;
  taps.index.resize(static_cast<std::size_t>(out_size) * 4);
  taps.weight.resize(static_cast<std::size_t>(out_size) * 4);
  const double scale = static_cast<double>(in_size) / out_size;
  for (int i = 0; i < out_size; ++i) {
    const double src = (i + 0.5) * scale - 0.5;
    const double base = std::floor(src);
    const double t = src - base;
    for (int k = 0; k < 4; ++k) {
      const auto idx = static_cast<std::size_t>(i) * 4 + k;
      taps.index[idx] = std::clamp(static_cast<int>(base) - 1 + k, 0, in_size - 1);
      taps.weight[idx] = catmull_rom(t - (k - 1));
    }
  }
  return taps;
}

}  // namespace

Raster resize_to_height(const Raster& line, int target_height) {
  if (line.empty()) throw ExtractionError("cannot resize an empty raster");
  if (target_height < 1) throw ExtractionError("target height must be >= 1");
  if (line.height == target_height) return line;
  const int out_w = std::max(
      1, static_cast<int>(std::lround(static_cast<double>(line.width) * target_height / line.height)));
  const int ch = line.channels;
  const Taps tx = make_taps(line.width, out_w);
  const Taps ty = make_taps(line.height, target_height);

  // Horizontal pass into doubles, then vertical pass to bytes.
  std::vector<double> tmp(static_cast<std::size_t>(line.height) * out_w * ch);
  for (int y = 0; y < line.height; ++y) {
    for (int x = 0; x < out_w; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) {
          const auto t = static_cast<std::size_t>(x) * 4 + k;
          acc += tx.weight[t] * line.at(tx.index[t], y, c);
        }
        tmp[(static_cast<std::size_t>(y) * out_w + x) * ch + c] = acc;
      }
    }
  }
  Raster out(out_w, target_height, ch);
  for (int y = 0; y < target_height; ++y) {
    for (int x = 0; x < out_w; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) {
          const auto t = static_cast<std::size_t>(y) * 4 + k;
          acc += ty.weight[t] * tmp[(static_cast<std::size_t>(ty.index[t]) * out_w + x) * ch + c];
        }
        out.at(x, y, c) = to_byte(acc);
      }
    }
  }
  return out;
}

std::string_view reason_code(RejectReason reason) {
  switch (reason) {
    case RejectReason::kNone: return "none";
    case RejectReason::kOutOfFrame: return "out-of-frame";
    case RejectReason::kBehindCamera: return "behind-camera";
    case RejectReason::kDegenerateGeometry: return "degenerate-geometry";
    case RejectReason::kExtractionBounds: return "extraction-bounds";
  }
  return "unknown";
}

ExtractResult extract_line(const AugmentedFrame& frame, int target_height) {
  ExtractResult result;
  if (!check_containment(frame.quad, frame.image.width, frame.image.height)) {
    result.reason = RejectReason::kOutOfFrame;
    result.detail = "text quad not fully inside the frame";
    return result;
  }
  try {
    const RotatedRect rect = min_area_rect(frame.quad);
    result.rect = rect;
    result.line = resize_to_height(rotate_and_crop(frame.image, rect), target_height);
  } catch (const DegenerateGeometryError& e) {
    result.reason = RejectReason::kDegenerateGeometry;
    result.detail = e.what();
  } catch (const ExtractionError& e) {
    result.reason = RejectReason::kExtractionBounds;
    result.detail = e.what();
  }
  return result;
}

}  // namespace ocraug
