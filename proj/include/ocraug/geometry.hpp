#pragma once

// Scene geometry: cameras, rigid poses, the circular trajectory, billboarded
// text planes and the plane-to-frame homography.
//
// World frame convention: +X right, +Y down, +Z forward. World-up is -Y, so
// a camera looking along +Z from the origin sees image x along +X and image
// y along +Y. Pixel (i, j) covers the continuous square [i, i+1) x [j, j+1);
// its centre is (i + 0.5, j + 0.5).

#include <array>
#include <string>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/LU>

namespace ocraug {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline const Vec3 kWorldDown{0.0, 1.0, 0.0};
inline const Vec3 kWorldUp{0.0, -1.0, 0.0};

struct CameraSpec {
  std::string name;
  double sensor_width_mm = 36.0;
  double sensor_height_mm = 24.0;
  double focal_length_mm = 50.0;
  Vec3 position{0.0, 0.0, 0.0};
  Vec3 look_at{0.0, 0.0, 1.0};
};

// Throws InvalidSpecError on non-positive optics or position == look_at.
void validate(const CameraSpec& camera);

struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  Mat3 matrix() const;
};

Intrinsics intrinsics_from_spec(const CameraSpec& camera, int render_width, int render_height);

/// World-to-camera transform: p_cam = rotation * (p_world - centre).
/// `translation` holds -rotation * centre so that p_cam = R p + t.
struct RigidPose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 centre() const { return -rotation.transpose() * translation; }
  bool is_valid(double tol = 1e-9) const;
};

/// Pose of a camera at `position` looking at `look_at` with world-down as
/// the image y reference. Falls back to world-X as the reference axis when
/// the view direction is within 1e-6 of vertical.
RigidPose look_at_pose(const Vec3& position, const Vec3& look_at);

struct TrajectorySpec {
  Vec3 center{0.0, 0.0, 0.0};
  double radius_min = 0.05;
  double radius_max = 0.15;
  double rotation_min_deg = -45.0;
  double rotation_max_deg = 45.0;
  int frames_per_scene = 10;
  double tilt_deg = 20.0;
};

void validate(const TrajectorySpec& trajectory);

/// Position of the plane centre at `frame_index` on a circle of `radius`
/// around trajectory.center. The circle starts parallel to the image plane,
/// is tilted by tilt_deg about the camera x axis, then rotated by psi_deg
/// about the optical axis. `camera_rotation` is the world-to-camera rotation
/// of the observing camera; identity means camera axes equal world axes.
Vec3 trajectory_position(const TrajectorySpec& trajectory, double radius, double psi_deg,
                         int frame_index, const Mat3& camera_rotation = Mat3::Identity());

struct SourceDims {
  int width = 0;
  int height = 0;
};

/// Text plane in world space. Source pixel (u, v) sits at
/// origin + u * pixel_scale * ex + v * pixel_scale * ey.
struct PlanePose {
  Vec3 origin = Vec3::Zero();
  Vec3 ex = Vec3::UnitX();
  Vec3 ey = Vec3::UnitY();
  double pixel_scale = 0.0005;

  // Unit normal on the visible side of the text (ey x ex).
  Vec3 facing_normal() const { return ey.cross(ex); }
  Vec3 point_at(double u, double v) const {
    return origin + (u * pixel_scale) * ex + (v * pixel_scale) * ey;
  }
};

PlanePose billboard_pose(const Vec3& camera_position, const Vec3& plane_center, SourceDims source,
                         double pixel_scale);

struct Homography {
  Mat3 m = Mat3::Identity();

  Vec2 map(const Vec2& p) const;
  Homography inverse() const;
  double det() const { return m.determinant(); }
};

/// Closed-form image of the textured plane through the pinhole camera:
/// H = K [r1 | r2 | t]. Throws BehindCameraError when any source corner is at
/// non-positive depth.
Homography plane_homography(const Intrinsics& intrinsics, const RigidPose& camera_pose,
                            const PlanePose& plane, SourceDims source);

/// Corners ordered top-left, top-right, bottom-right, bottom-left of the
/// source image.
struct Quad2D {
  std::array<Vec2, 4> corners;

  double signed_area() const;
  bool is_convex() const;
};

Quad2D project_quad(const Homography& h, SourceDims source);

double deg_to_rad(double deg);
double rad_to_deg(double rad);

}  // namespace ocraug
