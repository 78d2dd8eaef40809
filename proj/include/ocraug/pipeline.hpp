#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ocraug/config.hpp"
#include "ocraug/extract.hpp"
#include "ocraug/manifest.hpp"
#include "ocraug/render.hpp"
#include "ocraug/scene.hpp"

namespace ocraug {

/// Scene and frame used for a replica. With factor - 1 <= frames_per_scene a
/// sample has one scene and replicas are spread over its trajectory:
/// frame = floor((replica - 1) * frames / (factor - 1)). Larger factors
/// chain additional scenes, frames_per_scene replicas each.
struct ReplicaPlan {
  int scene_index = 0;
  int frame_index = 0;
};

ReplicaPlan plan_replica(int replica, int enlargement_factor, int frames_per_scene);

inline constexpr int kMaxSceneAttempts = 8;

/// Stream for scene draw `attempt` of (sample, scene). Attempt 0 is the
/// plain derive_rng stream; retries use independent children of it.
RandomStream scene_stream(std::uint64_t seed, const std::string& sample_id, int scene_index, int attempt);

/// Renders and extracts a single replica attempt. Used by the pipeline and
/// by the inspect command.
struct ReplicaAttempt {
  std::optional<SceneInstance> scene;
  std::optional<AugmentedFrame> frame;
  ExtractResult extract;
};

ReplicaAttempt run_replica_attempt(const Raster& source, const AugmentConfig& config,
                                   const std::string& sample_id, int replica, int attempt,
                                   std::optional<int> frame_override = std::nullopt);

struct RejectionRecord {
  std::string source_id;
  int replica = 0;
  int attempt = 0;
  RejectReason reason = RejectReason::kNone;
  std::string detail;
};

struct ClassCounts {
  int originals = 0;
  int augmented = 0;
  int passthrough = 0;
};

struct AugmentResult {
  std::vector<ManifestEntry> entries;
  std::vector<RejectionRecord> rejections;
  std::map<Difficulty, ClassCounts> per_class;
  int frames_rendered = 0;
  int passthrough = 0;
};

/// Writes originals and (factor - 1) variants per sample under `out_dir`
/// plus manifest.tsv, rejections.tsv and summary.json. Output bytes depend
/// only on (samples, config), never on config.workers.
AugmentResult augment_dataset(const std::vector<TextLineSample>& samples, const AugmentConfig& config,
                              const std::filesystem::path& out_dir);

/// Relative output path of replica `replica` of `image_path`.
std::string augmented_path(const std::string& image_path, int replica, const std::string& extension);

/// Stratified-by-difficulty subset: round(fraction * n_class) lines of
/// every class, chosen under `seed`. Returns indices in input order.
std::vector<std::size_t> take_fraction(const std::vector<ManifestEntry>& entries, double fraction,
                                       std::uint64_t seed);

}  // namespace ocraug
