#include "ocraug/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ocraug/errors.hpp"

namespace ocraug {

using nlohmann::json;

std::vector<CameraSpec> default_cameras() {
  // Trajectory centre sits at the world origin; every camera looks at it.
  return {
      {"smartphone-wide", 6.17, 4.55, 4.25, Vec3(0.0, -0.05, -0.6), Vec3::Zero()},
      {"smartphone-tele", 6.17, 4.55, 6.9, Vec3(0.05, -0.05, -0.9), Vec3::Zero()},
      {"aps-c", 23.5, 15.6, 35.0, Vec3(0.0, -0.1, -1.19), Vec3::Zero()},
      {"full-frame", 36.0, 24.0, 50.0, Vec3(0.0, 0.0, -1.2), Vec3::Zero()},
  };
}

AugmentConfig default_config() {
  AugmentConfig config;
  config.cameras = default_cameras();
  config.lighting.ambient = 0.1;
  config.lighting.lights = {SunLight{Vec3(0.15, 0.25, 1.0).normalized(), 0.9}};
  return config;
}

void validate(const AugmentConfig& config) {
  if (config.cameras.empty()) throw ConfigError("config: camera list is empty");
  std::set<std::string> names;
  for (const auto& cam : config.cameras) {
    validate(cam);
    if (!names.insert(cam.name).second) throw ConfigError("config: duplicate camera name '" + cam.name + "'");
  }
  validate(config.lighting);
  validate(config.trajectory);
  if (config.render_width < 1 || config.render_height < 1) {
    throw ConfigError("config: render dimensions must be >= 1");
  }
  if (!(config.pixel_scale > 0.0)) throw ConfigError("config: pixel_scale must be > 0");
  if (config.enlargement_factor < 1) throw ConfigError("config: enlargement_factor must be >= 1");
  if (config.workers < 1) throw ConfigError("config: workers must be >= 1");
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("config: unknown key '" + key + "' in " + where);
  }
}

Vec3 vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("config: " + what + " must be [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Vec3 unit_vec3(const json& j, const std::string& what) {
  const Vec3 v = vec3(j, what);
  if (v.norm() == 0.0) throw ConfigError("config: " + what + " must be non-zero");
  return v.normalized();
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

CameraSpec parse_camera(const json& j, std::size_t index) {
  const std::string where = "cameras[" + std::to_string(index) + "]";
  reject_unknown(j, {"name", "sensor_width_mm", "sensor_height_mm", "focal_length_mm", "position", "look_at"},
                 where);
  CameraSpec cam;
  cam.name = j.value("name", "camera" + std::to_string(index));
  read(j, "sensor_width_mm", cam.sensor_width_mm);
  read(j, "sensor_height_mm", cam.sensor_height_mm);
  read(j, "focal_length_mm", cam.focal_length_mm);
  if (j.contains("position")) cam.position = vec3(j["position"], where + ".position");
  if (j.contains("look_at")) cam.look_at = vec3(j["look_at"], where + ".look_at");
  return cam;
}

LightSpec parse_light(const json& j, std::size_t index) {
  const std::string where = "lights[" + std::to_string(index) + "]";
  const std::string type = j.value("type", "");
  if (type == "sun") {
    reject_unknown(j, {"type", "direction", "irradiance"}, where);
    SunLight l;
    if (j.contains("direction")) l.direction = unit_vec3(j["direction"], where + ".direction");
    read(j, "irradiance", l.irradiance);
    return l;
  }
  if (type == "point") {
    reject_unknown(j, {"type", "position", "power"}, where);
    PointLight l;
    if (j.contains("position")) l.position = vec3(j["position"], where + ".position");
    read(j, "power", l.power);
    return l;
  }
  if (type == "spot") {
    reject_unknown(j, {"type", "position", "direction", "cone_half_angle_deg", "blend", "power"}, where);
    SpotLight l;
    if (j.contains("position")) l.position = vec3(j["position"], where + ".position");
    if (j.contains("direction")) l.direction = unit_vec3(j["direction"], where + ".direction");
    read(j, "cone_half_angle_deg", l.cone_half_angle_deg);
    read(j, "blend", l.blend);
    read(j, "power", l.power);
    return l;
  }
  if (type == "area") {
    reject_unknown(j, {"type", "center", "normal", "width", "height", "radiance", "sample_count"}, where);
    AreaLight l;
    if (j.contains("center")) l.center = vec3(j["center"], where + ".center");
    if (j.contains("normal")) l.normal = unit_vec3(j["normal"], where + ".normal");
    read(j, "width", l.width);
    read(j, "height", l.height);
    read(j, "radiance", l.radiance);
    read(j, "sample_count", l.sample_count);
    return l;
  }
  throw ConfigError("config: " + where + ".type must be one of sun, point, spot, area");
}

}  // namespace

AugmentConfig parse_config(std::string_view json_text) {
  AugmentConfig config = default_config();
  try {
    const json root = json::parse(json_text);
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown(root, {"cameras", "lights", "ambient", "trajectory", "render", "seed",
                          "enlargement_factor", "workers"},
                   "top level");
    if (root.contains("cameras")) {
      config.cameras.clear();
      for (std::size_t i = 0; i < root["cameras"].size(); ++i) {
        config.cameras.push_back(parse_camera(root["cameras"][i], i));
      }
    }
    if (root.contains("lights")) {
      config.lighting.lights.clear();
      for (std::size_t i = 0; i < root["lights"].size(); ++i) {
        config.lighting.lights.push_back(parse_light(root["lights"][i], i));
      }
    }
    read(root, "ambient", config.lighting.ambient);
    if (root.contains("trajectory")) {
      const json& t = root["trajectory"];
      reject_unknown(t, {"center", "radius_min", "radius_max", "rotation_min_deg", "rotation_max_deg",
                         "frames_per_scene", "tilt_deg"},
                     "trajectory");
      if (t.contains("center")) config.trajectory.center = vec3(t["center"], "trajectory.center");
      read(t, "radius_min", config.trajectory.radius_min);
      read(t, "radius_max", config.trajectory.radius_max);
      read(t, "rotation_min_deg", config.trajectory.rotation_min_deg);
      read(t, "rotation_max_deg", config.trajectory.rotation_max_deg);
      read(t, "frames_per_scene", config.trajectory.frames_per_scene);
      read(t, "tilt_deg", config.trajectory.tilt_deg);
    }
    if (root.contains("render")) {
      const json& r = root["render"];
      reject_unknown(r, {"width", "height", "pixel_scale"}, "render");
      read(r, "width", config.render_width);
      read(r, "height", config.render_height);
      read(r, "pixel_scale", config.pixel_scale);
    }
    read(root, "seed", config.seed);
    read(root, "enlargement_factor", config.enlargement_factor);
    read(root, "workers", config.workers);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  validate(config);
  return config;
}

AugmentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

}  // namespace

std::string config_to_json(const AugmentConfig& config) {
  json root;
  root["cameras"] = json::array();
  for (const auto& c : config.cameras) {
    root["cameras"].push_back({{"name", c.name},
                               {"sensor_width_mm", c.sensor_width_mm},
                               {"sensor_height_mm", c.sensor_height_mm},
                               {"focal_length_mm", c.focal_length_mm},
                               {"position", to_json(c.position)},
                               {"look_at", to_json(c.look_at)}});
  }
  root["lights"] = json::array();
  for (const auto& light : config.lighting.lights) {
    std::visit(
        [&](const auto& l) {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, SunLight>) {
            root["lights"].push_back(
                {{"type", "sun"}, {"direction", to_json(l.direction)}, {"irradiance", l.irradiance}});
          } else if constexpr (std::is_same_v<T, PointLight>) {
            root["lights"].push_back({{"type", "point"}, {"position", to_json(l.position)}, {"power", l.power}});
          } else if constexpr (std::is_same_v<T, SpotLight>) {
            root["lights"].push_back({{"type", "spot"},
                                      {"position", to_json(l.position)},
                                      {"direction", to_json(l.direction)},
                                      {"cone_half_angle_deg", l.cone_half_angle_deg},
                                      {"blend", l.blend},
                                      {"power", l.power}});
          } else {
            root["lights"].push_back({{"type", "area"},
                                      {"center", to_json(l.center)},
                                      {"normal", to_json(l.normal)},
                                      {"width", l.width},
                                      {"height", l.height},
                                      {"radiance", l.radiance},
                                      {"sample_count", l.sample_count}});
          }
        },
        light);
  }
  root["ambient"] = config.lighting.ambient;
  const auto& t = config.trajectory;
  root["trajectory"] = {{"center", to_json(t.center)},
                        {"radius_min", t.radius_min},
                        {"radius_max", t.radius_max},
                        {"rotation_min_deg", t.rotation_min_deg},
                        {"rotation_max_deg", t.rotation_max_deg},
                        {"frames_per_scene", t.frames_per_scene},
                        {"tilt_deg", t.tilt_deg}};
  root["render"] = {{"width", config.render_width},
                    {"height", config.render_height},
                    {"pixel_scale", config.pixel_scale}};
  root["seed"] = config.seed;
  root["enlargement_factor"] = config.enlargement_factor;
  return root.dump(2);
}

}  // namespace ocraug
