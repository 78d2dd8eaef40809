#pragma once

// Line manifests: `image_path<TAB>difficulty<TAB>transcript`, optionally
// followed by the provenance columns written for augmented datasets:
// origin, source_id, replica, frame, camera, radius_m, psi_deg.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ocraug {

enum class Difficulty { kEasy, kMedium, kHard, kUnknown };

inline constexpr Difficulty kAllDifficulties[] = {Difficulty::kEasy, Difficulty::kMedium,
                                                  Difficulty::kHard, Difficulty::kUnknown};

std::string_view to_string(Difficulty d);
std::optional<Difficulty> parse_difficulty(std::string_view s);

enum class Origin { kOriginal, kAugmented };

std::string_view to_string(Origin o);

struct ManifestEntry {
  std::string image_path;  // relative, '/'-separated; doubles as the line id
  Difficulty difficulty = Difficulty::kUnknown;
  std::string transcript;
  Origin origin = Origin::kOriginal;
  // Provenance; empty for lines read from a plain 3-column manifest.
  std::string source_id;
  int replica = 0;
  std::optional<int> frame;
  std::string camera;
  std::optional<double> radius_m;
  std::optional<double> psi_deg;

  const std::string& id() const { return image_path; }
  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// Reads manifest rows without touching the images. Blank lines are
/// skipped, CRLF endings accepted. Throws ParseError naming the line.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
std::vector<ManifestEntry> parse_manifest(std::string_view text, const std::string& source_name);

/// Writes all ten columns (or only the first three) atomically via a
/// temporary file and rename.
void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path,
                    bool with_provenance = true);
std::string format_manifest(const std::vector<ManifestEntry>& entries, bool with_provenance = true);

struct TextLineSample {
  std::string id;          // == image_path
  std::string image_path;  // as written in the manifest
  std::filesystem::path image_file;  // resolved against the manifest directory
  std::string transcript;
  Difficulty difficulty = Difficulty::kUnknown;
  int width = 0;
  int height = 0;
  int channels = 0;
};

struct LoadOptions {
  bool strict = false;                   // any sample error becomes fatal
  bool allow_empty_transcripts = false;  // otherwise an empty label is a sample error
};

struct LoadResult {
  std::vector<TextLineSample> samples;
  std::vector<std::string> sample_errors;  // one message per skipped line
};

/// read_manifest plus image validation: every image is decoded once to
/// confirm it is a non-empty 8-bit raster and to record its size.
LoadResult load_manifest(const std::filesystem::path& path, const LoadOptions& options = {});

}  // namespace ocraug
