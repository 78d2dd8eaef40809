#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ocraug/geometry.hpp"
#include "ocraug/raster.hpp"
#include "ocraug/render.hpp"

namespace ocraug {

/// Rectangle of arbitrary orientation. `angle_deg` is the direction of the
/// width side measured from +x towards +y (image coordinates, y down).
/// Canonical form: width >= height and angle in (-90, 90].
struct RotatedRect {
  Vec2 center = Vec2::Zero();
  double width = 0.0;
  double height = 0.0;
  double angle_deg = 0.0;

  double area() const { return width * height; }
  std::array<Vec2, 4> corners() const;
  // Largest distance of `p` outside the rectangle (0 when inside).
  double outside_distance(const Vec2& p) const;
};

// Closed pixel-index bounds: 0 <= x <= frame_w - 1 and 0 <= y <= frame_h - 1.
bool check_containment(const Quad2D& quad, int frame_w, int frame_h);

/// Minimum-area enclosing rectangle by rotating calipers over the convex
/// hull. Throws DegenerateGeometryError when the points are collinear.
RotatedRect min_area_rect(std::span<const Vec2> points);
RotatedRect min_area_rect(const Quad2D& quad);

/// Rotates `frame` by -rect.angle about rect.center (bilinear). Output has
/// the input dimensions; area rotated in from outside is 0.
Raster compensate_rotation(const Raster& frame, const RotatedRect& rect);

/// round(width) x round(height) pixels centred on rect.center. Throws
/// ExtractionError when the box leaves the raster.
Raster crop_rect(const Raster& compensated, const RotatedRect& rect);

/// Same bytes as crop_rect(compensate_rotation(frame, rect), rect) without
/// materialising the full rotated frame.
Raster rotate_and_crop(const Raster& frame, const RotatedRect& rect);

/// Catmull-Rom (a = -0.5) resize to `target_height`, aspect ratio kept.
/// Returns the input unchanged when it already has the target height.
Raster resize_to_height(const Raster& line, int target_height);

enum class RejectReason {
  kNone,
  kOutOfFrame,
  kBehindCamera,
  kDegenerateGeometry,
  kExtractionBounds,
};

std::string_view reason_code(RejectReason reason);

struct ExtractResult {
  std::optional<Raster> line;
  RejectReason reason = RejectReason::kNone;
  std::string detail;
  std::optional<RotatedRect> rect;

  bool accepted() const { return line.has_value(); }
};

/// containment -> min-area rect -> rotation compensation -> crop -> resize.
/// Failures are reported as rejections, never thrown.
ExtractResult extract_line(const AugmentedFrame& frame, int target_height);

}  // namespace ocraug
