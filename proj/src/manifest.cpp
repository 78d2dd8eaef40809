#include "ocraug/manifest.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "ocraug/errors.hpp"
#include "ocraug/image_io.hpp"

namespace ocraug {

std::string_view to_string(Difficulty d) {
  switch (d) {
    case Difficulty::kEasy: return "easy";
    case Difficulty::kMedium: return "medium";
    case Difficulty::kHard: return "hard";
    case Difficulty::kUnknown: return "unknown";
  }
  return "unknown";
}

std::optional<Difficulty> parse_difficulty(std::string_view s) {
  for (Difficulty d : kAllDifficulties) {
    if (s == to_string(d)) return d;
  }
  return std::nullopt;
}

std::string_view to_string(Origin o) { return o == Origin::kOriginal ? "original" : "augmented"; }

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool is_relative(std::string_view p) {
  if (p.empty() || p.front() == '/') return false;
  const std::filesystem::path path{std::string(p)};
  return !path.has_root_name() && !path.has_root_directory();
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(std::string_view text, const std::string& source_name) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<ManifestEntry> entries;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (line.empty()) continue;

    const auto f = split_tabs(line);
    if (f.size() != 3 && f.size() != 10) {
      throw ParseError(source_name, line_no,
                       "expected 3 or 10 TAB-separated fields, found " + std::to_string(f.size()));
    }
    ManifestEntry e;
    if (!is_relative(f[0])) throw ParseError(source_name, line_no, "image path must be relative");
    e.image_path = std::string(f[0]);
    const auto diff = parse_difficulty(f[1]);
    if (!diff) {
      throw ParseError(source_name, line_no,
                       "unknown difficulty '" + std::string(f[1]) + "' (easy|medium|hard|unknown)");
    }
    e.difficulty = *diff;
    e.transcript = std::string(f[2]);
    if (f.size() == 10) {
      if (f[3] == "augmented") {
        e.origin = Origin::kAugmented;
      } else if (f[3] != "original") {
        throw ParseError(source_name, line_no, "origin must be 'original' or 'augmented'");
      }
      e.source_id = std::string(f[4]);
      const auto replica = parse_number<int>(f[5]);
      if (!replica) throw ParseError(source_name, line_no, "replica is not an integer");
      e.replica = *replica;
      if (f[6] != "-") {
        e.frame = parse_number<int>(f[6]);
        if (!e.frame) throw ParseError(source_name, line_no, "frame is not an integer");
      }
      if (f[7] != "-") e.camera = std::string(f[7]);
      if (f[8] != "-") {
        e.radius_m = parse_number<double>(f[8]);
        if (!e.radius_m) throw ParseError(source_name, line_no, "radius_m is not a number");
      }
      if (f[9] != "-") {
        e.psi_deg = parse_number<double>(f[9]);
        if (!e.psi_deg) throw ParseError(source_name, line_no, "psi_deg is not a number");
      }
    }
    if (!seen.insert(e.image_path).second) {
      throw ParseError(source_name, line_no, "duplicate image path '" + e.image_path + "'");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.string());
}

std::string format_manifest(const std::vector<ManifestEntry>& entries, bool with_provenance) {
  std::string out;
  for (const auto& e : entries) {
    for (std::string_view field : {std::string_view(e.image_path), std::string_view(e.transcript)}) {
      if (field.find_first_of("\t\n") != std::string_view::npos) {
        throw IoError("manifest field for '" + e.image_path + "' contains a TAB or newline");
      }
    }
    out += e.image_path;
    out += '\t';
    out += to_string(e.difficulty);
    out += '\t';
    out += e.transcript;
    if (!with_provenance) {
      out += '\n';
      continue;
    }
    out += '\t';
    out += to_string(e.origin);
    out += '\t';
    out += e.source_id.empty() ? e.image_path : e.source_id;
    out += '\t';
    out += std::to_string(e.replica);
    out += '\t';
    out += e.frame ? std::to_string(*e.frame) : "-";
    out += '\t';
    out += e.camera.empty() ? "-" : e.camera;
    out += '\t';
    out += e.radius_m ? format_double(*e.radius_m) : "-";
    out += '\t';
    out += e.psi_deg ? format_double(*e.psi_deg) : "-";
    out += '\n';
  }
  return out;
}

void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path,
                    bool with_provenance) {
  const std::string text = format_manifest(entries, with_provenance);
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

LoadResult load_manifest(const std::filesystem::path& path, const LoadOptions& options) {
  const auto entries = read_manifest(path);
  if (entries.empty()) spdlog::warn("manifest {} contains no lines", path.string());
  const auto root = path.parent_path();
  LoadResult result;
  for (const auto& e : entries) {
    TextLineSample s;
    s.id = e.image_path;
    s.image_path = e.image_path;
    s.image_file = root / e.image_path;
    s.transcript = e.transcript;
    s.difficulty = e.difficulty;
    try {
      if (s.transcript.empty() && !options.allow_empty_transcripts) {
        throw SampleError(s.id + ": empty transcript");
      }
      const Raster img = read_image(s.image_file);
      s.width = img.width;
      s.height = img.height;
      s.channels = img.channels;
    } catch (const SampleError& err) {
      if (options.strict) throw;
      result.sample_errors.emplace_back(err.what());
      spdlog::warn("skipping sample: {}", err.what());
      continue;
    }
    result.samples.push_back(std::move(s));
  }
  return result;
}

}  // namespace ocraug
