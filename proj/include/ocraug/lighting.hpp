#pragma once

// Lambertian light model for the matte text plane.

#include <variant>
#include <vector>

#include "ocraug/geometry.hpp"

namespace ocraug {

class RandomStream;

struct SunLight {
  Vec3 direction{0.0, 0.0, 1.0};  // direction the light travels, unit length
  double irradiance = 1.0;
};

struct PointLight {
  Vec3 position{0.0, 0.0, 0.0};
  double power = 1.0;
};

struct SpotLight {
  Vec3 position{0.0, 0.0, 0.0};
  Vec3 direction{0.0, 0.0, 1.0};
  double cone_half_angle_deg = 45.0;  // (0, 90]
  double blend = 0.15;                // fraction of the cone used for the soft edge
  double power = 1.0;
};

struct AreaLight {
  Vec3 center{0.0, 0.0, 0.0};
  Vec3 normal{0.0, 0.0, 1.0};
  double width = 1.0;
  double height = 1.0;
  double radiance = 1.0;
  int sample_count = 16;
};

using LightSpec = std::variant<SunLight, PointLight, SpotLight, AreaLight>;

struct Lighting {
  std::vector<LightSpec> lights;
  double ambient = 0.1;
};

void validate(const Lighting& lighting);

/// Lighting prepared for one frame: area lights are expanded into their
/// stratified point samples so shading is a pure per-point evaluation.
class ShadingModel {
 public:
  // Area light samples sit at the centre of their strata.
  explicit ShadingModel(const Lighting& lighting);
  // Area light samples are jittered inside their strata from `stream`.
  ShadingModel(const Lighting& lighting, RandomStream stream);

  // clamp(ambient + sum of light contributions, 0, 1)
  double factor(const Vec3& point, const Vec3& normal) const;

  // Same sum without the clamp.
  double unclamped(const Vec3& point, const Vec3& normal) const;

 private:
  struct AreaSamples {
    std::vector<Vec3> positions;
    double radiance = 0.0;
  };

  void prepare(const Lighting& lighting, RandomStream* stream);

  double ambient_ = 0.0;
  std::vector<SunLight> suns_;
  std::vector<PointLight> points_;
  std::vector<SpotLight> spots_;
  std::vector<AreaSamples> areas_;
};

double shading_factor(const Lighting& lighting, const Vec3& point, const Vec3& normal);

}  // namespace ocraug
