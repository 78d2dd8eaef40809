#include "ocraug/scene.hpp"

#include "ocraug/errors.hpp"

namespace ocraug {

SceneInstance sample_scene(const AugmentConfig& config, RandomStream& rng) {
  if (config.cameras.empty()) throw ConfigError("config: camera list is empty");
  SceneInstance scene;
  const auto cam_index = rng.uniform_index(config.cameras.size());
  scene.camera = config.cameras[cam_index];
  scene.intrinsics = intrinsics_from_spec(scene.camera, config.render_width, config.render_height);
  scene.camera_pose = look_at_pose(scene.camera.position, scene.camera.look_at);
  scene.lighting = config.lighting;
  scene.trajectory = config.trajectory;
  scene.radius = rng.uniform(config.trajectory.radius_min, config.trajectory.radius_max);
  scene.psi_deg = rng.uniform(config.trajectory.rotation_min_deg, config.trajectory.rotation_max_deg);
  scene.pixel_scale = config.pixel_scale;
  scene.stream = rng;
  return scene;
}

SceneFrame scene_frame(const SceneInstance& scene, SourceDims source, int frame_index) {
  SceneFrame frame;
  frame.frame_index = frame_index;
  frame.plane_center = trajectory_position(scene.trajectory, scene.radius, scene.psi_deg, frame_index,
                                           scene.camera_pose.rotation);
  frame.plane = billboard_pose(scene.camera.position, frame.plane_center, source, scene.pixel_scale);
  frame.homography = plane_homography(scene.intrinsics, scene.camera_pose, frame.plane, source);
  return frame;
}

}  // namespace ocraug
