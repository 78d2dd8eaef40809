#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ocraug/geometry.hpp"
#include "ocraug/lighting.hpp"

namespace ocraug {

struct AugmentConfig {
  std::vector<CameraSpec> cameras;
  Lighting lighting;
  TrajectorySpec trajectory;
  int render_width = 1920;
  int render_height = 1080;
  double pixel_scale = 0.0005;  // metres per source pixel
  int enlargement_factor = 2;
  std::uint64_t seed = 0;
  int workers = 1;
};

/// Four stock cameras (two phone modules, APS-C, full frame), a single sun
/// with ambient fill, and a 10-frame circular trajectory.
AugmentConfig default_config();

std::vector<CameraSpec> default_cameras();

// Throws ConfigError / InvalidSpecError.
void validate(const AugmentConfig& config);

/// Parses a JSON document. Missing sections keep their defaults; unknown keys
/// are rejected so typos never silently fall back to defaults.
AugmentConfig parse_config(std::string_view json_text);
AugmentConfig load_config(const std::filesystem::path& path);

std::string config_to_json(const AugmentConfig& config);

}  // namespace ocraug
