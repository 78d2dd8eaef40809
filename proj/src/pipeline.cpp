#include "ocraug/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <set>
#include <thread>

#include <spdlog/spdlog.h>

#include "json.hpp"
#include "ocraug/errors.hpp"
#include "ocraug/image_io.hpp"

namespace ocraug {

namespace {

// Keeps retry streams apart from the per-frame light streams forked off the
// same key.
constexpr std::uint64_t kAttemptTagBase = 1ull << 40;

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto extra = static_cast<std::size_t>(std::max(workers, 1) - 1);
  std::vector<std::jthread> threads;
  for (std::size_t t = 0; t < std::min(extra, n); ++t) threads.emplace_back(work);
  work();
  threads.clear();  // joins
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void copy_file_bytes(const std::filesystem::path& from, const std::filesystem::path& to) {
  const auto bytes = read_file(from);
  write_file_atomic(to, bytes);
}

struct TaskResult {
  ManifestEntry entry;
  std::vector<RejectionRecord> rejections;
  int frames_rendered = 0;
  bool passthrough = false;
};

}  // namespace

ReplicaPlan plan_replica(int replica, int enlargement_factor, int frames_per_scene) {
  if (replica < 1 || replica >= enlargement_factor) {
    throw std::out_of_range("replica " + std::to_string(replica) + " outside [1, " +
                            std::to_string(enlargement_factor) + ")");
  }
  const int q = replica - 1;
  const int replicas = enlargement_factor - 1;
  if (replicas <= frames_per_scene) {
    return {0, static_cast<int>(static_cast<long long>(q) * frames_per_scene / replicas)};
  }
  return {q / frames_per_scene, q % frames_per_scene};
}

RandomStream scene_stream(std::uint64_t seed, const std::string& sample_id, int scene_index, int attempt) {
  RandomStream base = derive_rng(seed, sample_id, static_cast<std::uint64_t>(scene_index));
  if (attempt == 0) return base;
  return base.fork(kAttemptTagBase + static_cast<std::uint64_t>(attempt));
}

ReplicaAttempt run_replica_attempt(const Raster& source, const AugmentConfig& config,
                                   const std::string& sample_id, int replica, int attempt,
                                   std::optional<int> frame_override) {
  const ReplicaPlan plan =
      plan_replica(replica, config.enlargement_factor, config.trajectory.frames_per_scene);
  RandomStream rng = scene_stream(config.seed, sample_id, plan.scene_index, attempt);
  ReplicaAttempt out;
  out.scene = sample_scene(config, rng);
  const int frame_index = frame_override.value_or(plan.frame_index);
  SceneFrame slice;
  try {
    slice = scene_frame(*out.scene, {source.width, source.height}, frame_index);
  } catch (const BehindCameraError& e) {
    out.extract.reason = RejectReason::kBehindCamera;
    out.extract.detail = e.what();
    return out;
  } catch (const DegeneratePoseError& e) {
    out.extract.reason = RejectReason::kDegenerateGeometry;
    out.extract.detail = e.what();
    return out;
  }
  out.frame = render_frame(source, *out.scene, slice);
  out.frame->scene.sample_id = sample_id;
  out.frame->scene.replica = replica;
  out.frame->scene.seed = config.seed;
  out.extract = extract_line(*out.frame, source.height);
  return out;
}

std::string augmented_path(const std::string& image_path, int replica, const std::string& extension) {
  const std::filesystem::path p(image_path);
  const std::string name = p.stem().string() + "_aug" + std::to_string(replica) + extension;
  return (p.parent_path() / name).generic_string();
}

AugmentResult augment_dataset(const std::vector<TextLineSample>& samples, const AugmentConfig& config,
                              const std::filesystem::path& out_dir) {
  validate(config);
  const int factor = config.enlargement_factor;
  const std::size_t per_sample = static_cast<std::size_t>(factor);

  // Every output path must stay inside out_dir and be unique before anything
  // is written.
  std::set<std::string> targets;
  for (const auto& s : samples) {
    for (const auto& part : std::filesystem::path(s.image_path)) {
      if (part == "..") throw InputError("image path escapes the output tree: " + s.image_path);
    }
    const std::string ext = std::filesystem::path(s.image_path).extension().string();
    std::vector<std::string> paths = {s.image_path};
    for (int r = 1; r < factor; ++r) {
      paths.push_back(augmented_path(s.image_path, r, ".png"));
      if (ext != ".png") paths.push_back(augmented_path(s.image_path, r, ext));
    }
    for (auto& p : paths) {
      if (!targets.insert(p).second) throw InputError("output path collision: " + p);
    }
  }

  std::filesystem::create_directories(out_dir);
  std::vector<TaskResult> results(samples.size() * per_sample);

  parallel_for(results.size(), config.workers, [&](std::size_t task) {
    const TextLineSample& sample = samples[task / per_sample];
    const int replica = static_cast<int>(task % per_sample);
    TaskResult& res = results[task];
    ManifestEntry& e = res.entry;
    e.difficulty = sample.difficulty;
    e.transcript = sample.transcript;
    e.source_id = sample.id;
    e.replica = replica;

    if (replica == 0) {
      e.image_path = sample.image_path;
      e.origin = Origin::kOriginal;
      copy_file_bytes(sample.image_file, out_dir / sample.image_path);
      return;
    }

    const Raster source = read_image(sample.image_file);
    for (int attempt = 0; attempt < kMaxSceneAttempts; ++attempt) {
      ReplicaAttempt a = run_replica_attempt(source, config, sample.id, replica, attempt);
      if (a.frame) ++res.frames_rendered;
      if (a.extract.accepted()) {
        e.image_path = augmented_path(sample.image_path, replica, ".png");
        e.origin = Origin::kAugmented;
        e.frame = a.frame->scene.frame_index;
        e.camera = a.frame->scene.camera;
        e.radius_m = a.frame->scene.radius;
        e.psi_deg = a.frame->scene.psi_deg;
        write_png(out_dir / e.image_path, *a.extract.line);
        return;
      }
      res.rejections.push_back({sample.id, replica, attempt, a.extract.reason, a.extract.detail});
      spdlog::debug("rejected {} replica {} attempt {}: {}", sample.id, replica, attempt,
                    reason_code(a.extract.reason));
    }
    // Persistent failure: keep the label count by passing the original through.
    const std::string ext = std::filesystem::path(sample.image_path).extension().string();
    e.image_path = augmented_path(sample.image_path, replica, ext);
    e.origin = Origin::kOriginal;
    res.passthrough = true;
    copy_file_bytes(sample.image_file, out_dir / e.image_path);
    spdlog::warn("{} replica {}: no valid scene after {} attempts, passing the original through",
                 sample.id, replica, kMaxSceneAttempts);
  });

  AugmentResult out;
  for (auto& r : results) {
    ClassCounts& counts = out.per_class[r.entry.difficulty];
    if (r.passthrough) {
      ++counts.passthrough;
      ++out.passthrough;
    } else if (r.entry.origin == Origin::kOriginal) {
      ++counts.originals;
    } else {
      ++counts.augmented;
    }
    out.frames_rendered += r.frames_rendered;
    out.rejections.insert(out.rejections.end(), r.rejections.begin(), r.rejections.end());
    out.entries.push_back(std::move(r.entry));
  }

  std::string log = "source_id\treplica\tattempt\treason\tdetail\n";
  for (const auto& r : out.rejections) {
    log += r.source_id + '\t' + std::to_string(r.replica) + '\t' + std::to_string(r.attempt) + '\t' +
           std::string(reason_code(r.reason)) + '\t' + r.detail + '\n';
  }
  write_file_atomic(out_dir / "rejections.tsv",
                    std::span(reinterpret_cast<const std::uint8_t*>(log.data()), log.size()));

  nlohmann::json summary;
  summary["seed"] = config.seed;
  summary["enlargement_factor"] = factor;
  summary["samples"] = samples.size();
  summary["entries"] = out.entries.size();
  summary["frames_rendered"] = out.frames_rendered;
  summary["rejections"] = out.rejections.size();
  summary["passthrough"] = out.passthrough;
  for (const auto& [d, c] : out.per_class) {
    summary["classes"][std::string(to_string(d))] = {
        {"originals", c.originals}, {"augmented", c.augmented}, {"passthrough", c.passthrough}};
  }
  summary["config"] = nlohmann::json::parse(config_to_json(config));
  const std::string summary_text = summary.dump(2) + "\n";
  write_file_atomic(out_dir / "summary.json",
                    std::span(reinterpret_cast<const std::uint8_t*>(summary_text.data()), summary_text.size()));

  write_manifest(out.entries, out_dir / "manifest.tsv");
  return out;
}

std::vector<std::size_t> take_fraction(const std::vector<ManifestEntry>& entries, double fraction,
                                       std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw InputError("fraction must lie in [0, 1]");
  std::vector<std::size_t> picked;
  for (Difficulty d : kAllDifficulties) {
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].difficulty == d) pool.push_back(i);
    }
    RandomStream rng = derive_rng(seed, "take-fraction/" + std::string(to_string(d)), 0);
    for (std::size_t i = pool.size(); i > 1; --i) {
      std::swap(pool[i - 1], pool[rng.uniform_index(i)]);
    }
    const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(pool.size())));
    picked.insert(picked.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace ocraug
