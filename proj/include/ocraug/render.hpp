#pragma once

#include <cstdint>
#include <string>

#include "ocraug/geometry.hpp"
#include "ocraug/lighting.hpp"
#include "ocraug/raster.hpp"
#include "ocraug/scene.hpp"

namespace ocraug {

struct FrameProvenance {
  std::string sample_id;
  int replica = 0;
  int frame_index = 0;
  std::string camera;
  double radius = 0.0;
  double psi_deg = 0.0;
  std::uint64_t seed = 0;
};

struct AugmentedFrame {
  Raster image;
  Quad2D quad;
  FrameProvenance scene;
};

/// Inverse-warps `source` through `h` onto a black out_w x out_h canvas and
/// multiplies each covered pixel by the shading of its 3D plane point.
/// Pixels whose centre pre-image falls outside the source rectangle stay 0.
Raster warp_and_shade(const Raster& source, const Homography& h, const PlanePose& plane,
                      const ShadingModel& shading, int out_w, int out_h);

/// Renders one frame of `scene`. Area lights draw from a sub-stream of the
/// scene stream keyed by the frame index.
AugmentedFrame render_frame(const Raster& source, const SceneInstance& scene, const SceneFrame& frame);

}  // namespace ocraug
