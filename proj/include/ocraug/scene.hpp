#pragma once

#include <cstdint>
#include <string>

#include "ocraug/config.hpp"
#include "ocraug/geometry.hpp"
#include "ocraug/lighting.hpp"
#include "ocraug/random.hpp"

namespace ocraug {

/// One fully sampled scene. All frames of a scene share camera, lights and
/// trajectory parameters.
struct SceneInstance {
  CameraSpec camera;
  Intrinsics intrinsics;
  RigidPose camera_pose;
  Lighting lighting;
  TrajectorySpec trajectory;
  double radius = 0.0;
  double psi_deg = 0.0;
  double pixel_scale = 0.0005;
  // Stream state after the scene draws; per-frame light sampling forks it.
  RandomStream stream{0};
};

/// Draws camera (uniform over the list), radius and psi from `rng`.
/// Throws ConfigError on an empty camera list.
SceneInstance sample_scene(const AugmentConfig& config, RandomStream& rng);

/// Per-frame slice of a scene for a given source image.
struct SceneFrame {
  int frame_index = 0;
  Vec3 plane_center = Vec3::Zero();
  PlanePose plane;
  Homography homography;
};

SceneFrame scene_frame(const SceneInstance& scene, SourceDims source, int frame_index);

}  // namespace ocraug
