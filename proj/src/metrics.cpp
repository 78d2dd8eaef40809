#include "ocraug/metrics.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numeric>
#include <sstream>

#include <spdlog/spdlog.h>

#include "json.hpp"
#include "ocraug/errors.hpp"
#include "ocraug/text.hpp"

namespace ocraug {

double cer(std::string_view hypothesis, std::string_view reference) {
  const auto ref = nfc_codepoints(reference);
  if (ref.empty()) throw UndefinedMetricError("CER undefined for an empty reference");
  const auto hyp = nfc_codepoints(hypothesis);
  return static_cast<double>(levenshtein(hyp, ref)) / static_cast<double>(ref.size());
}

double wer(std::string_view hypothesis, std::string_view reference) {
  const auto ref = tokenize_words(reference);
  if (ref.empty()) throw UndefinedMetricError("WER undefined for a reference without words");
  const auto hyp = tokenize_words(hypothesis);
  return static_cast<double>(levenshtein(hyp, ref)) / static_cast<double>(ref.size());
}

LineEval evaluate_line(std::string id, Difficulty difficulty, std::string_view hypothesis,
                       std::string_view reference, bool missing) {
  LineEval e;
  e.id = std::move(id);
  e.difficulty = difficulty;
  e.reference = std::string(reference);
  e.hypothesis = std::string(hypothesis);
  e.missing_hypothesis = missing;
  const auto ref_chars = nfc_codepoints(reference);
  const auto ref_words = tokenize_words(reference);
  e.n_chars = ref_chars.size();
  e.n_words = ref_words.size();
  if (ref_words.empty()) return e;  // excluded
  const auto hyp_chars = nfc_codepoints(hypothesis);
  const auto hyp_words = tokenize_words(hypothesis);
  e.char_distance = levenshtein(hyp_chars, ref_chars);
  e.word_distance = levenshtein(hyp_words, ref_words);
  e.cer = static_cast<double>(e.char_distance) / static_cast<double>(e.n_chars);
  e.wer = static_cast<double>(e.word_distance) / static_cast<double>(e.n_words);
  return e;
}

namespace {

// Order-independent mean: values are summed in ascending order.
double sorted_mean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  long double sum = 0.0L;
  for (double v : values) sum += v;
  return static_cast<double>(sum / static_cast<long double>(values.size()));
}

void finish_micro(ClassStats& s) {
  if (s.lines == 0) return;
  s.micro_cer = static_cast<double>(s.char_distance) / static_cast<double>(s.chars);
  s.micro_wer = static_cast<double>(s.word_distance) / static_cast<double>(s.words);
}

}  // namespace

EvalReport aggregate(std::vector<LineEval> evals) {
  std::sort(evals.begin(), evals.end(), [](const LineEval& a, const LineEval& b) { return a.id < b.id; });
  EvalReport report;
  std::map<Difficulty, std::vector<double>> cers;
  std::map<Difficulty, std::vector<double>> wers;
  for (Difficulty d : kAllDifficulties) report.classes[d] = ClassStats{};

  for (const auto& e : evals) {
    ClassStats& s = report.classes[e.difficulty];
    if (e.excluded()) {
      ++s.excluded;
      continue;
    }
    ++s.lines;
    if (e.missing_hypothesis) ++s.missing;
    s.char_distance += e.char_distance;
    s.chars += e.n_chars;
    s.word_distance += e.word_distance;
    s.words += e.n_words;
    cers[e.difficulty].push_back(*e.cer);
    wers[e.difficulty].push_back(*e.wer);
  }

  ClassStats& all = report.overall;
  long double weighted_cer = 0.0L;
  long double weighted_wer = 0.0L;
  for (Difficulty d : kAllDifficulties) {
    ClassStats& s = report.classes[d];
    all.lines += s.lines;
    all.excluded += s.excluded;
    all.missing += s.missing;
    all.char_distance += s.char_distance;
    all.chars += s.chars;
    all.word_distance += s.word_distance;
    all.words += s.words;
    if (s.lines == 0) continue;
    s.macro_cer = sorted_mean(cers[d]);
    s.macro_wer = sorted_mean(wers[d]);
    finish_micro(s);
    weighted_cer += static_cast<long double>(s.lines) * *s.macro_cer;
    weighted_wer += static_cast<long double>(s.lines) * *s.macro_wer;
  }
  if (all.lines > 0) {
    all.macro_cer = static_cast<double>(weighted_cer / static_cast<long double>(all.lines));
    all.macro_wer = static_cast<double>(weighted_wer / static_cast<long double>(all.lines));
    finish_micro(all);
  }
  report.lines = std::move(evals);
  return report;
}

std::map<std::string, std::string> read_hypotheses(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read hypothesis file " + path.string());
  std::map<std::string, std::string> hyps;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    std::string id = line.substr(0, tab);
    std::string text = tab == std::string::npos ? std::string() : line.substr(tab + 1);
    if (!hyps.emplace(id, std::move(text)).second) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": duplicate id '" + id + "'");
    }
  }
  return hyps;
}

EvalReport evaluate_run(const std::filesystem::path& reference_manifest,
                        const std::filesystem::path& hypothesis_file) {
  const auto refs = read_manifest(reference_manifest);
  auto hyps = read_hypotheses(hypothesis_file);
  std::vector<LineEval> evals;
  evals.reserve(refs.size());
  for (const auto& r : refs) {
    const auto it = hyps.find(r.id());
    const bool missing = it == hyps.end();
    evals.push_back(evaluate_line(r.id(), r.difficulty, missing ? std::string_view{} : it->second,
                                  r.transcript, missing));
    if (!missing) hyps.erase(it);
  }
  for (const auto& [id, _] : hyps) spdlog::warn("hypothesis for unknown id '{}' ignored", id);
  EvalReport report = aggregate(std::move(evals));
  report.reference_manifest = reference_manifest.string();
  report.hypothesis_file = hypothesis_file.string();
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  report.timestamp = buf;
  return report;
}

namespace {

nlohmann::json opt(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json stats_json(const ClassStats& s) {
  return {{"lines", s.lines},
          {"excluded", s.excluded},
          {"missing_hypotheses", s.missing},
          {"char_distance", s.char_distance},
          {"chars", s.chars},
          {"word_distance", s.word_distance},
          {"words", s.words},
          {"macro_cer", opt(s.macro_cer)},
          {"macro_wer", opt(s.macro_wer)},
          {"micro_cer", opt(s.micro_cer)},
          {"micro_wer", opt(s.micro_wer)}};
}

std::string two_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string percent(const std::optional<double>& v) { return v ? two_decimals(*v * 100.0) + "%" : "n/a"; }

std::string class_label(Difficulty d) {
  std::string s(to_string(d));
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

}  // namespace

std::string report_to_json(const EvalReport& report) {
  nlohmann::json root;
  for (const auto& [d, s] : report.classes) root["classes"][std::string(to_string(d))] = stats_json(s);
  root["overall"] = stats_json(report.overall);
  root["lines"] = nlohmann::json::array();
  for (const auto& e : report.lines) {
    root["lines"].push_back({{"id", e.id},
                             {"difficulty", std::string(to_string(e.difficulty))},
                             {"reference", e.reference},
                             {"hypothesis", e.hypothesis},
                             {"missing_hypothesis", e.missing_hypothesis},
                             {"excluded", e.excluded()},
                             {"char_distance", e.char_distance},
                             {"word_distance", e.word_distance},
                             {"n_chars", e.n_chars},
                             {"n_words", e.n_words},
                             {"cer", opt(e.cer)},
                             {"wer", opt(e.wer)}});
  }
  root["metadata"] = {{"reference_manifest", report.reference_manifest},
                      {"hypothesis_file", report.hypothesis_file},
                      {"timestamp", report.timestamp}};
  return root.dump(2) + "\n";
}

std::string report_to_csv(const EvalReport& report) {
  std::string out = "metric";
  for (Difficulty d : kAllDifficulties) out += "," + class_label(d);
  out += ",Overall\n";
  auto row = [&](const char* name, auto member) {
    out += name;
    for (Difficulty d : kAllDifficulties) {
      const auto v = report.classes.at(d).*member;
      out += ",";
      if (v) out += two_decimals(*v * 100.0);
    }
    const auto v = report.overall.*member;
    out += ",";
    if (v) out += two_decimals(*v * 100.0);
    out += "\n";
  };
  row("CER (%)", &ClassStats::macro_cer);
  row("WER (%)", &ClassStats::macro_wer);
  row("micro CER (%)", &ClassStats::micro_cer);
  row("micro WER (%)", &ClassStats::micro_wer);
  return out;
}

std::string report_summary(const EvalReport& report) {
  std::string out;
  for (const auto& [d, s] : report.classes) {
    if (s.lines == 0) continue;
    out += class_label(d) + " CER " + percent(s.macro_cer) + " WER " + percent(s.macro_wer) + "\n";
  }
  out += "Overall CER " + percent(report.overall.macro_cer) + " WER " + percent(report.overall.macro_wer) +
         "\n";
  return out;
}

}  // namespace ocraug
