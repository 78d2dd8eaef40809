#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "ocraug/image_io.hpp"
#include "ocraug/random.hpp"

namespace ocraug::synth {

namespace {

constexpr int kGlyphW = 5;
constexpr int kGlyphH = 7;

bool glyph_bit(unsigned char ch, int gx, int gy) {
  const std::uint64_t bits = mix64(0x9e3779b97f4a7c15ull ^ ch);
  // Rows 0 and 6 are kept sparse so lines look like text with ascenders.
  const int bit = gy * kGlyphW + gx;
  const bool on = ((bits >> (bit % 64)) & 1u) != 0;
  if (gy == 0 || gy == kGlyphH - 1) return on && gx % 2 == 1;
  return on;
}

}  // namespace

Raster render_text(const std::string& text, int height, int channels) {
  const int cell = std::max(1, height / (kGlyphH + 2));
  const int margin = cell;
  const int advance = (kGlyphW + 1) * cell;
  const int width = 2 * margin + std::max<int>(1, static_cast<int>(text.size())) * advance;
  Raster img(width, height, channels, 255);
  const int top = (height - kGlyphH * cell) / 2;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto ch = static_cast<unsigned char>(text[i]);
    if (ch == ' ') continue;
    const int left = margin + static_cast<int>(i) * advance;
    for (int gy = 0; gy < kGlyphH; ++gy) {
      for (int gx = 0; gx < kGlyphW; ++gx) {
        if (!glyph_bit(ch, gx, gy)) continue;
        for (int y = 0; y < cell; ++y) {
          for (int x = 0; x < cell; ++x) {
            for (int c = 0; c < channels; ++c) {
              img.at(left + gx * cell + x, top + gy * cell + y, c) = static_cast<std::uint8_t>(20 + 10 * c);
            }
          }
        }
      }
    }
  }
  return img;
}

std::string random_transcript(std::uint64_t seed, int max_words) {
  RandomStream rng(mix64(seed));
  const int words = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_words)));
  std::string out;
  for (int w = 0; w < words; ++w) {
    if (w > 0) out += ' ';
    const int len = 2 + static_cast<int>(rng.uniform_index(6));
    for (int i = 0; i < len; ++i) out += static_cast<char>('a' + rng.uniform_index(26));
  }
  return out;
}

std::vector<SynthLine> write_dataset(const std::filesystem::path& dir, int count, std::uint64_t seed,
                                     int height) {
  std::filesystem::create_directories(dir / "lines");
  std::vector<SynthLine> lines;
  std::vector<ManifestEntry> entries;
  for (int i = 0; i < count; ++i) {
    SynthLine line;
    char name[32];
    std::snprintf(name, sizeof name, "lines/l%04d.png", i);
    line.image_path = name;
    line.difficulty = kAllDifficulties[static_cast<std::size_t>(i % 4)];
    line.transcript = random_transcript(seed * 1000003u + static_cast<std::uint64_t>(i));
    line.image = render_text(line.transcript, height);
    write_png(dir / line.image_path, line.image);
    ManifestEntry e;
    e.image_path = line.image_path;
    e.difficulty = line.difficulty;
    e.transcript = line.transcript;
    entries.push_back(e);
    lines.push_back(std::move(line));
  }
  write_manifest(entries, dir / "manifest.tsv", false);
  return lines;
}

double psnr(const Raster& a, const Raster& b) {
  if (a.width != b.width || a.height != b.height || a.channels != b.channels) {
    throw std::invalid_argument("psnr: shape mismatch");
  }
  double sse = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(a.data.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::string tree_digest(const std::filesystem::path& dir) {
  std::map<std::string, std::uint64_t> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto bytes = read_file(entry.path());
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint8_t b : bytes) h = (h ^ b) * 0x100000001b3ull;
    files[std::filesystem::relative(entry.path(), dir).generic_string()] = mix64(h ^ bytes.size());
  }
  std::uint64_t total = 0;
  for (const auto& [name, h] : files) total = mix64(total ^ hash_string(name) ^ mix64(h));
  char buf[40];
  std::snprintf(buf, sizeof buf, "%zu files %016llx", files.size(), static_cast<unsigned long long>(total));
  return buf;
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("ocraug-test-" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace ocraug::synth
