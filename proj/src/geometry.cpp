#include "ocraug/geometry.hpp"

#include <cmath>
#include <numbers>


#include "ocraug/errors.hpp"

namespace ocraug {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

void validate(const CameraSpec& camera) {
  if (!(camera.sensor_width_mm > 0.0) || !(camera.sensor_height_mm > 0.0) ||
      !(camera.focal_length_mm > 0.0)) {
    throw InvalidSpecError("camera '" + camera.name +
                           "': sensor size and focal length must be positive");
  }
  if ((camera.position - camera.look_at).norm() == 0.0) {
    throw InvalidSpecError("camera '" + camera.name + "': position equals look_at");
  }
}

Mat3 Intrinsics::matrix() const {
  Mat3 k;
  k << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
  return k;
}

Intrinsics intrinsics_from_spec(const CameraSpec& camera, int render_width, int render_height) {
  validate(camera);
  if (render_width < 1 || render_height < 1) {
    throw InvalidSpecError("render resolution must be at least 1x1");
  }
  Intrinsics k;
  k.width = render_width;
  k.height = render_height;
  k.fx = camera.focal_length_mm * render_width / camera.sensor_width_mm;
  k.fy = camera.focal_length_mm * render_height / camera.sensor_height_mm;
  k.cx = render_width / 2.0;
  k.cy = render_height / 2.0;
  return k;
}

bool RigidPose::is_valid(double tol) const {
  const Mat3 gram = rotation.transpose() * rotation - Mat3::Identity();
  return gram.cwiseAbs().maxCoeff() <= tol && std::abs(rotation.determinant() - 1.0) <= tol;
}

namespace {

// Vertical-ish reference used to orient image y / text y. Returns the
// component of `reference` orthogonal to `axis`, normalised, falling back to
// world X when `axis` is (anti)parallel to the world vertical.
Vec3 orthogonal_reference(const Vec3& axis, bool* used_fallback) {
  const double alignment = std::abs(axis.dot(kWorldDown));
  if (1.0 - alignment <= 1e-6) {
    *used_fallback = true;
    const Vec3 x = Vec3::UnitX();
    return (x - x.dot(axis) * axis).normalized();
  }
  *used_fallback = false;
  return (kWorldDown - kWorldDown.dot(axis) * axis).normalized();
}

}  // namespace

RigidPose look_at_pose(const Vec3& position, const Vec3& look_at) {
  const Vec3 forward_raw = look_at - position;
  if (forward_raw.norm() == 0.0) throw DegeneratePoseError("camera position equals look_at");
  const Vec3 z = forward_raw.normalized();
  bool fallback = false;
  const Vec3 ref = orthogonal_reference(z, &fallback);
  Vec3 x;
  Vec3 y;
  if (!fallback) {
    y = ref;
    x = y.cross(z);
  } else {
    x = ref;
    y = z.cross(x);
  }
  RigidPose pose;
  pose.rotation.row(0) = x.transpose();
  pose.rotation.row(1) = y.transpose();
  pose.rotation.row(2) = z.transpose();
  pose.translation = -pose.rotation * position;
  return pose;
}

void validate(const TrajectorySpec& t) {
  if (!(t.radius_min > 0.0) || !(t.radius_min <= t.radius_max)) {
    throw ConfigError("trajectory: require 0 < radius_min <= radius_max");
  }
  if (!(t.rotation_min_deg <= t.rotation_max_deg)) {
    throw ConfigError("trajectory: require rotation_min <= rotation_max");
  }
  if (t.frames_per_scene < 1) throw ConfigError("trajectory: frames_per_scene must be >= 1");
}

Vec3 trajectory_position(const TrajectorySpec& trajectory, double radius, double psi_deg,
                         int frame_index, const Mat3& camera_rotation) {
  if (frame_index < 0 || frame_index >= trajectory.frames_per_scene) {
    throw std::out_of_range("frame index " + std::to_string(frame_index) + " outside [0, " +
                            std::to_string(trajectory.frames_per_scene) + ")");
  }
  const double theta =
      2.0 * std::numbers::pi * frame_index / static_cast<double>(trajectory.frames_per_scene);
  const Vec3 on_circle(radius * std::cos(theta), radius * std::sin(theta), 0.0);
  const Eigen::AngleAxisd tilt(deg_to_rad(trajectory.tilt_deg), Vec3::UnitX());
  const Eigen::AngleAxisd spin(deg_to_rad(psi_deg), Vec3::UnitZ());
  const Vec3 offset_cam = spin.toRotationMatrix() * (tilt.toRotationMatrix() * on_circle);
  return trajectory.center + camera_rotation.transpose() * offset_cam;
}

PlanePose billboard_pose(const Vec3& camera_position, const Vec3& plane_center, SourceDims source,
                         double pixel_scale) {
  const Vec3 to_camera = camera_position - plane_center;
  if (to_camera.norm() == 0.0) throw DegeneratePoseError("plane centre coincides with camera");
  const Vec3 n = to_camera.normalized();
  bool fallback = false;
  const Vec3 ref = orthogonal_reference(n, &fallback);
  PlanePose plane;
  plane.pixel_scale = pixel_scale;
  if (!fallback) {
    plane.ey = ref;
    plane.ex = n.cross(plane.ey);
  } else {
    plane.ex = ref;
    plane.ey = plane.ex.cross(n);
  }
  plane.origin = plane_center - (source.width / 2.0) * pixel_scale * plane.ex -
                 (source.height / 2.0) * pixel_scale * plane.ey;
  return plane;
}

Vec2 Homography::map(const Vec2& p) const {
  const Vec3 q = m * Vec3(p.x(), p.y(), 1.0);
  return {q.x() / q.z(), q.y() / q.z()};
}

Homography Homography::inverse() const { return Homography{m.inverse()}; }

Homography plane_homography(const Intrinsics& intrinsics, const RigidPose& camera_pose,
                            const PlanePose& plane, SourceDims source) {
  const Mat3& r = camera_pose.rotation;
  const Vec3 centre = camera_pose.centre();
  const Vec3 r1 = r * plane.ex * plane.pixel_scale;
  const Vec3 r2 = r * plane.ey * plane.pixel_scale;
  const Vec3 t = r * (plane.origin - centre);

  const std::array<Vec2, 4> corners = {Vec2(0, 0), Vec2(source.width, 0),
                                       Vec2(source.width, source.height),
                                       Vec2(0, source.height)};
  for (const auto& c : corners) {
    const double depth = t.z() + c.x() * r1.z() + c.y() * r2.z();
    if (!(depth > 0.0)) throw BehindCameraError("text plane corner at non-positive depth");
  }

  Mat3 rt;
  rt.col(0) = r1;
  rt.col(1) = r2;
  rt.col(2) = t;
  Homography h{intrinsics.matrix() * rt};
  if (!(std::abs(h.det()) > 1e-12)) throw BehindCameraError("singular plane homography");
  return h;
}

double Quad2D::signed_area() const {
  double twice = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec2& a = corners[i];
    const Vec2& b = corners[(i + 1) % 4];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

bool Quad2D::is_convex() const {
  int sign = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec2 e0 = corners[(i + 1) % 4] - corners[i];
    const Vec2 e1 = corners[(i + 2) % 4] - corners[(i + 1) % 4];
    const double cross = e0.x() * e1.y() - e0.y() * e1.x();
    if (cross == 0.0) continue;
    const int s = cross > 0.0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return sign != 0;
}

Quad2D project_quad(const Homography& h, SourceDims source) {
  const std::array<Vec2, 4> src = {Vec2(0, 0), Vec2(source.width, 0),
                                   Vec2(source.width, source.height), Vec2(0, source.height)};
  Quad2D quad;
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec3 q = h.m * Vec3(src[i].x(), src[i].y(), 1.0);
    if (!(q.z() > 1e-12)) throw BehindCameraError("quad corner maps to w <= 1e-12");
    quad.corners[i] = Vec2(q.x() / q.z(), q.y() / q.z());
  }
  return quad;
}

}  // namespace ocraug
