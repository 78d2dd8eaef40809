#include "ocraug/lighting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ocraug/errors.hpp"
#include "ocraug/random.hpp"

namespace ocraug {

namespace {

bool unit(const Vec3& v) { return std::abs(v.norm() - 1.0) <= 1e-9; }

double point_contribution(const Vec3& light_pos, double power, const Vec3& point,
                          const Vec3& normal) {
  const Vec3 to_light = light_pos - point;
  const double dist2 = to_light.squaredNorm();
  if (dist2 == 0.0) return 0.0;
  const double cosine = std::max(0.0, to_light.dot(normal) / std::sqrt(dist2));
  return power * cosine / dist2;
}

double cone_gate(const SpotLight& spot, const Vec3& point) {
  const Vec3 from_light = point - spot.position;
  const double len = from_light.norm();
  if (len == 0.0) return 0.0;
  const double cos_a = std::clamp(from_light.dot(spot.direction) / len, -1.0, 1.0);
  const double angle = rad_to_deg(std::acos(cos_a));
  const double outer = spot.cone_half_angle_deg;
  const double inner = outer * (1.0 - spot.blend);
  if (angle >= outer) return 0.0;
  if (angle <= inner) return 1.0;
  const double t = (outer - angle) / (outer - inner);
  return t * t * (3.0 - 2.0 * t);
}

}  // namespace

void validate(const Lighting& lighting) {
  if (!(lighting.ambient >= 0.0 && lighting.ambient <= 1.0)) {
    throw ConfigError("ambient must lie in [0, 1]");
  }
  for (const auto& light : lighting.lights) {
    std::visit(
        [](const auto& l) {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, SunLight>) {
            if (!unit(l.direction)) throw ConfigError("sun direction must be unit length");
            if (!(l.irradiance >= 0.0)) throw ConfigError("sun irradiance must be >= 0");
          } else if constexpr (std::is_same_v<T, PointLight>) {
            if (!(l.power >= 0.0)) throw ConfigError("point light power must be >= 0");
          } else if constexpr (std::is_same_v<T, SpotLight>) {
            if (!unit(l.direction)) throw ConfigError("spot direction must be unit length");
            if (!(l.cone_half_angle_deg > 0.0 && l.cone_half_angle_deg <= 90.0)) {
              throw ConfigError("spot cone_half_angle must lie in (0, 90]");
            }
            if (!(l.blend >= 0.0 && l.blend <= 1.0)) throw ConfigError("spot blend in [0, 1]");
            if (!(l.power >= 0.0)) throw ConfigError("spot power must be >= 0");
          } else {
            if (!unit(l.normal)) throw ConfigError("area light normal must be unit length");
            if (!(l.width >= 0.0 && l.height >= 0.0 && l.radiance >= 0.0)) {
              throw ConfigError("area light size and radiance must be >= 0");
            }
            if (l.sample_count < 1) throw ConfigError("area light sample_count must be >= 1");
          }
        },
        light);
  }
}

ShadingModel::ShadingModel(const Lighting& lighting) { prepare(lighting, nullptr); }

ShadingModel::ShadingModel(const Lighting& lighting, RandomStream stream) {
  prepare(lighting, &stream);
}

void ShadingModel::prepare(const Lighting& lighting, RandomStream* stream) {
  ambient_ = lighting.ambient;
  for (const auto& light : lighting.lights) {
    if (const auto* sun = std::get_if<SunLight>(&light)) {
      suns_.push_back(*sun);
    } else if (const auto* point = std::get_if<PointLight>(&light)) {
      points_.push_back(*point);
    } else if (const auto* spot = std::get_if<SpotLight>(&light)) {
      spots_.push_back(*spot);
    } else {
      const auto& area = std::get<AreaLight>(light);
      // In-plane axes of the emitter: same up-reference rule as billboards.
      const PlanePose frame = billboard_pose(area.center + area.normal, area.center, {0, 0}, 1.0);
      const int n = area.sample_count;
      // Latin-hypercube strata: sample i occupies row i and column perm[i].
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      if (stream != nullptr) {
        for (int i = n - 1; i > 0; --i) {
          const auto j = static_cast<int>(stream->uniform_index(static_cast<std::uint64_t>(i) + 1));
          std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        }
      }
      AreaSamples samples;
      samples.radiance = area.radiance;
      for (int i = 0; i < n; ++i) {
        const double ju = stream != nullptr ? stream->uniform01() : 0.5;
        const double jv = stream != nullptr ? stream->uniform01() : 0.5;
        const double su = (i + ju) / n - 0.5;
        const double sv = (perm[static_cast<std::size_t>(i)] + jv) / n - 0.5;
        samples.positions.push_back(area.center + su * area.width * frame.ex +
                                    sv * area.height * frame.ey);
      }
      areas_.push_back(std::move(samples));
    }
  }
}

double ShadingModel::unclamped(const Vec3& point, const Vec3& normal) const {
  double sum = ambient_;
  for (const auto& sun : suns_) sum += sun.irradiance * std::max(0.0, -sun.direction.dot(normal));
  for (const auto& p : points_) sum += point_contribution(p.position, p.power, point, normal);
  for (const auto& s : spots_) {
    const double gate = cone_gate(s, point);
    if (gate > 0.0) sum += gate * point_contribution(s.position, s.power, point, normal);
  }
  for (const auto& area : areas_) {
    double acc = 0.0;
    for (const auto& pos : area.positions) acc += point_contribution(pos, area.radiance, point, normal);
    sum += acc / static_cast<double>(area.positions.size());
  }
  return sum;
}

double ShadingModel::factor(const Vec3& point, const Vec3& normal) const {
  return std::clamp(unclamped(point, normal), 0.0, 1.0);
}

double shading_factor(const Lighting& lighting, const Vec3& point, const Vec3& normal) {
  return ShadingModel(lighting).factor(point, normal);
}

}  // namespace ocraug
