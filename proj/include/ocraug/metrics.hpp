#pragma once

// Character and word error rates with per-class aggregation.
//
//   CER = d_C(hyp, ref) / N_C     WER = d_W(hyp, ref) / N_W
//
// d is the unit-cost Levenshtein distance over NFC code points (CER) or
// whitespace-delimited words (WER); N counts the reference's tokens.

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocraug/manifest.hpp"

namespace ocraug {

template <typename T>
std::size_t levenshtein(std::span<const T> a, std::span<const T> b) {
  // Two-row dynamic program over the (|a|+1) x (|b|+1) grid.
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

template <typename Container>
std::size_t levenshtein(const Container& a, const Container& b) {
  using T = typename Container::value_type;
  return levenshtein<T>(std::span<const T>(a.data(), a.size()), std::span<const T>(b.data(), b.size()));
}

// Throw UndefinedMetricError for an empty / word-less reference.
double cer(std::string_view hypothesis, std::string_view reference);
double wer(std::string_view hypothesis, std::string_view reference);

struct LineEval {
  std::string id;
  Difficulty difficulty = Difficulty::kUnknown;
  std::string reference;
  std::string hypothesis;
  bool missing_hypothesis = false;
  std::size_t char_distance = 0;
  std::size_t word_distance = 0;
  std::size_t n_chars = 0;
  std::size_t n_words = 0;
  // Empty when the reference has no words; such lines are tallied as
  // excluded and never enter the rates.
  std::optional<double> cer;
  std::optional<double> wer;

  bool excluded() const { return !cer.has_value(); }
};

LineEval evaluate_line(std::string id, Difficulty difficulty, std::string_view hypothesis,
                       std::string_view reference, bool missing = false);

struct ClassStats {
  std::size_t lines = 0;     // scored lines
  std::size_t excluded = 0;  // undefined reference
  std::size_t missing = 0;   // scored as empty hypothesis
  std::size_t char_distance = 0;
  std::size_t chars = 0;
  std::size_t word_distance = 0;
  std::size_t words = 0;
  std::optional<double> macro_cer;
  std::optional<double> macro_wer;
  std::optional<double> micro_cer;
  std::optional<double> micro_wer;
};

struct EvalReport {
  std::map<Difficulty, ClassStats> classes;  // all four classes present
  ClassStats overall;
  std::vector<LineEval> lines;
  std::string reference_manifest;
  std::string hypothesis_file;
  std::string timestamp;
};

/// Per class: macro = mean of per-line rates, micro = pooled distances over
/// pooled lengths. Overall macro = class macros weighted by line counts.
/// Result does not depend on the order of `evals`.
EvalReport aggregate(std::vector<LineEval> evals);

/// Hypothesis file: `id<TAB>text` per line. Duplicate ids throw InputError.
std::map<std::string, std::string> read_hypotheses(const std::filesystem::path& path);

/// Joins reference manifest and hypotheses on id. Missing hypotheses score
/// as empty; hypotheses for unknown ids are ignored with a warning.
EvalReport evaluate_run(const std::filesystem::path& reference_manifest,
                        const std::filesystem::path& hypothesis_file);

std::string report_to_json(const EvalReport& report);
std::string report_to_csv(const EvalReport& report);
// "<Class> CER x.xx% WER y.yy%" per populated class, then the Overall line.
std::string report_summary(const EvalReport& report);

}  // namespace ocraug
