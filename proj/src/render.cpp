#include "ocraug/render.hpp"

#include <algorithm>
#include <cmath>

namespace ocraug {

Raster warp_and_shade(const Raster& source, const Homography& h, const PlanePose& plane,
                      const ShadingModel& shading, int out_w, int out_h) {
  Raster out(out_w, out_h, source.channels, 0);
  const SourceDims dims{source.width, source.height};
  const Quad2D quad = project_quad(h, dims);

  // Only pixels inside the projected quad can have a pre-image on the plane.
  double min_x = quad.corners[0].x(), max_x = min_x;
  double min_y = quad.corners[0].y(), max_y = min_y;
  for (const auto& c : quad.corners) {
    min_x = std::min(min_x, c.x());
    max_x = std::max(max_x, c.x());
    min_y = std::min(min_y, c.y());
    max_y = std::max(max_y, c.y());
  }
  const int x_begin = static_cast<int>(std::clamp(std::floor(min_x) - 1.0, 0.0, double(out_w)));
  const int x_end = static_cast<int>(std::clamp(std::ceil(max_x) + 1.0, 0.0, double(out_w)));
  const int y_begin = static_cast<int>(std::clamp(std::floor(min_y) - 1.0, 0.0, double(out_h)));
  const int y_end = static_cast<int>(std::clamp(std::ceil(max_y) + 1.0, 0.0, double(out_h)));

  const Mat3 inv = h.inverse().m;
  const Vec3 normal = plane.facing_normal();
  const double src_w = source.width;
  const double src_h = source.height;
  double px[kMaxChannels];

  for (int y = y_begin; y < y_end; ++y) {
    for (int x = x_begin; x < x_end; ++x) {
      const Vec3 s = inv * Vec3(x + 0.5, y + 0.5, 1.0);
      if (!(s.z() > 0.0)) continue;
      const double u = s.x() / s.z();
      const double v = s.y() / s.z();
      if (!(u >= 0.0 && u < src_w && v >= 0.0 && v < src_h)) continue;
      sample_bilinear_clamped(source, u - 0.5, v - 0.5, px);
      const double f = shading.factor(plane.point_at(u, v), normal);
      auto dst = out.pixel(x, y);
      for (int c = 0; c < source.channels; ++c) dst[static_cast<std::size_t>(c)] = to_byte(px[c] * f);
    }
  }
  return out;
}

AugmentedFrame render_frame(const Raster& source, const SceneInstance& scene, const SceneFrame& frame) {
  const ShadingModel shading(scene.lighting,
                             scene.stream.fork(static_cast<std::uint64_t>(frame.frame_index)));
  AugmentedFrame result;
  result.image = warp_and_shade(source, frame.homography, frame.plane, shading,
                                scene.intrinsics.width, scene.intrinsics.height);
  result.quad = project_quad(frame.homography, {source.width, source.height});
  result.scene.frame_index = frame.frame_index;
  result.scene.camera = scene.camera.name;
  result.scene.radius = scene.radius;
  result.scene.psi_deg = scene.psi_deg;
  return result;
}

}  // namespace ocraug
