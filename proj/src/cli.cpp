#include "ocraug/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "ocraug/config.hpp"
#include "ocraug/errors.hpp"
#include "ocraug/image_io.hpp"
#include "ocraug/manifest.hpp"
#include "ocraug/metrics.hpp"
#include "ocraug/pipeline.hpp"

namespace ocraug {

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> factor;
};

AugmentConfig effective_config(const CommonOptions& opts) {
  AugmentConfig config = opts.config_path.empty() ? default_config() : load_config(opts.config_path);
  if (opts.seed) config.seed = *opts.seed;
  if (opts.factor) config.enlargement_factor = *opts.factor;
  validate(config);
  return config;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// --- augment ---------------------------------------------------------------

struct AugmentOptions {
  CommonOptions common;
  std::string input;
  std::string out;
  std::optional<int> workers;
  bool strict = false;
  bool allow_empty = false;
};

int cmd_augment(const AugmentOptions& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  AugmentConfig config = effective_config(o.common);
  if (o.workers) config.workers = *o.workers;
  if (config.workers < 1) throw ConfigError("workers must be >= 1");

  const LoadResult loaded = load_manifest(o.input, {o.strict, o.allow_empty});
  out << "seed " << config.seed << "\n";
  const AugmentResult result = augment_dataset(loaded.samples, config, o.out);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  out << "samples " << loaded.samples.size() << " (skipped " << loaded.sample_errors.size() << ")\n";
  for (const auto& [d, c] : result.per_class) {
    out << to_string(d) << ": originals " << c.originals << ", augmented " << c.augmented
        << ", passed through " << c.passthrough << "\n";
  }
  int augmented = 0;
  for (const auto& [d, c] : result.per_class) augmented += c.augmented;
  out << "augmented lines written " << augmented << ", passed through " << result.passthrough << "\n";
  std::map<std::string_view, int> reasons;
  for (const auto& r : result.rejections) ++reasons[reason_code(r.reason)];
  out << "frames rendered " << result.frames_rendered << ", rejected " << result.rejections.size();
  for (const auto& [code, n] : reasons) out << " " << code << "=" << n;
  out << "\n";
  out << "manifest " << (std::filesystem::path(o.out) / "manifest.tsv").string() << " ("
      << result.entries.size() << " lines)\n";
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.2f", seconds);
  out << "wall time " << wall << " s\n";
  return 0;
}

// --- evaluate --------------------------------------------------------------

struct EvaluateOptions {
  std::string ref;
  std::string hyp;
  std::string report;
  std::string csv;
};

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out) {
  if (!std::filesystem::exists(o.hyp)) throw InputError("hypothesis file not found: " + o.hyp);
  if (!std::filesystem::exists(o.ref)) throw InputError("reference manifest not found: " + o.ref);
  const EvalReport report = evaluate_run(o.ref, o.hyp);
  if (!o.report.empty()) write_text(o.report, report_to_json(report));
  if (!o.csv.empty()) write_text(o.csv, report_to_csv(report));
  out << report_summary(report);
  const ClassStats& all = report.overall;
  if (all.excluded > 0) out << "excluded " << all.excluded << " line(s) with an empty reference\n";
  if (all.missing > 0) out << "missing hypotheses " << all.missing << " (scored as empty)\n";
  return 0;
}

// --- inspect ---------------------------------------------------------------

struct InspectOptions {
  CommonOptions common;
  std::string input;
  std::string sample;
  int replica = 1;
  int attempt = 0;
  std::optional<int> frame;
  std::string out;
  std::string extracted;
};

void draw_line(Raster& img, int x0, int y0, int x1, int y1) {
  const int dx = std::abs(x1 - x0);
  const int dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1;
  const int sy = y0 < y1 ? 1 : -1;
  int e = dx + dy;
  for (;;) {
    if (x0 >= 0 && y0 >= 0 && x0 < img.width && y0 < img.height) {
      img.at(x0, y0, 0) = 255;
      img.at(x0, y0, 1) = 0;
      img.at(x0, y0, 2) = 0;
    }
    if (x0 == x1 && y0 == y1) return;
    const int e2 = 2 * e;
    if (e2 >= dy) {
      e += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      e += dx;
      y0 += sy;
    }
  }
}

Raster outline(const Raster& frame, const Quad2D& quad) {
  Raster rgb(frame.width, frame.height, 3);
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      for (int c = 0; c < 3; ++c) rgb.at(x, y, c) = frame.at(x, y, frame.channels == 1 ? 0 : c);
    }
  }
  auto pixel_of = [](double v) {
    return static_cast<int>(std::clamp(std::floor(v), -1e6, 1e6));
  };
  for (int i = 0; i < 4; ++i) {
    const Vec2& a = quad.corners[static_cast<std::size_t>(i)];
    const Vec2& b = quad.corners[static_cast<std::size_t>((i + 1) % 4)];
    draw_line(rgb, pixel_of(a.x()), pixel_of(a.y()), pixel_of(b.x()), pixel_of(b.y()));
  }
  return rgb;
}

int cmd_inspect(const InspectOptions& o, std::ostream& out) {
  const AugmentConfig config = effective_config(o.common);
  const LoadResult loaded = load_manifest(o.input, {true, true});
  const TextLineSample* sample = nullptr;
  for (const auto& s : loaded.samples) {
    if (s.id == o.sample) sample = &s;
  }
  if (sample == nullptr) throw InputError("unknown sample id '" + o.sample + "'");
  if (o.replica < 1 || o.replica >= config.enlargement_factor) {
    throw InputError("replica must lie in [1, " + std::to_string(config.enlargement_factor) + ")");
  }
  if (o.attempt < 0 || o.attempt >= kMaxSceneAttempts) {
    throw InputError("attempt must lie in [0, " + std::to_string(kMaxSceneAttempts) + ")");
  }
  if (o.frame && (*o.frame < 0 || *o.frame >= config.trajectory.frames_per_scene)) {
    throw InputError("frame must lie in [0, " + std::to_string(config.trajectory.frames_per_scene) + ")");
  }

  out << "seed " << config.seed << "\n";
  const Raster source = read_image(sample->image_file);
  const ReplicaAttempt a = run_replica_attempt(source, config, sample->id, o.replica, o.attempt, o.frame);
  const SceneInstance& scene = *a.scene;
  out << "camera " << scene.camera.name << " radius " << fmt_double(scene.radius) << " psi "
      << fmt_double(scene.psi_deg) << "\n";
  if (!a.frame) {
    out << "rejected " << reason_code(a.extract.reason) << ": " << a.extract.detail << "\n";
    return 0;
  }
  out << "frame " << a.frame->scene.frame_index << "\n";
  out << "quad";
  for (const Vec2& c : a.frame->quad.corners) out << " " << fmt_double(c.x()) << "," << fmt_double(c.y());
  out << "\n";
  if (!o.out.empty()) {
    if (std::filesystem::path(o.out).has_parent_path()) {
      std::filesystem::create_directories(std::filesystem::path(o.out).parent_path());
    }
    write_png(o.out, outline(a.frame->image, a.frame->quad));
  }
  if (a.extract.accepted()) {
    const RotatedRect& r = *a.extract.rect;
    out << "rect center " << fmt_double(r.center.x()) << "," << fmt_double(r.center.y()) << " size "
        << fmt_double(r.width) << "x" << fmt_double(r.height) << " angle " << fmt_double(r.angle_deg) << "\n";
    out << "extracted " << a.extract.line->width << "x" << a.extract.line->height << "\n";
    if (!o.extracted.empty()) {
      if (std::filesystem::path(o.extracted).has_parent_path()) {
        std::filesystem::create_directories(std::filesystem::path(o.extracted).parent_path());
      }
      write_png(o.extracted, *a.extract.line);
    }
  } else {
    out << "rejected " << reason_code(a.extract.reason) << ": " << a.extract.detail << "\n";
  }
  return 0;
}

// --- take-fraction ---------------------------------------------------------

struct FractionOptions {
  std::string input;
  std::string out;
  double fraction = 1.0;
  std::uint64_t seed = 0;
};

int cmd_take_fraction(const FractionOptions& o, std::ostream& out) {
  const auto entries = read_manifest(o.input);
  const auto picked = take_fraction(entries, o.fraction, o.seed);
  const auto in_dir = std::filesystem::absolute(o.input).parent_path();
  const auto out_dir = std::filesystem::absolute(o.out).parent_path();
  std::vector<ManifestEntry> subset;
  subset.reserve(picked.size());
  for (std::size_t i : picked) {
    ManifestEntry e = entries[i];
    e.image_path = (in_dir / e.image_path).lexically_normal().lexically_relative(out_dir).generic_string();
    subset.push_back(std::move(e));
  }
  std::filesystem::create_directories(out_dir);
  const bool provenance = std::any_of(entries.begin(), entries.end(),
                                      [](const ManifestEntry& e) { return !e.source_id.empty(); });
  write_manifest(subset, o.out, provenance);
  out << "seed " << o.seed << "\n";
  out << "kept " << subset.size() << " of " << entries.size() << " lines\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic camera-view augmentation and CER/WER evaluation for OCR line datasets", "ocraug"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log per-attempt details");

  AugmentOptions aug;
  auto* augment = app.add_subcommand("augment", "Enlarge a line dataset with rendered camera views");
  augment->add_option("--input", aug.input, "Input manifest (TSV)")->required();
  augment->add_option("--out", aug.out, "Output directory")->required();
  augment->add_option("--config", aug.common.config_path, "JSON configuration file");
  augment->add_option("--factor", aug.common.factor, "Enlargement factor (total lines per source line)");
  augment->add_option("--seed", aug.common.seed, "Master seed");
  augment->add_option("--workers", aug.workers, "Worker threads");
  augment->add_flag("--strict", aug.strict, "Fail on the first unreadable sample instead of skipping it");
  augment->add_flag("--allow-empty-transcripts", aug.allow_empty, "Accept lines with an empty transcript");

  EvaluateOptions ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score recognizer output against a manifest");
  evaluate->add_option("--ref", ev.ref, "Reference manifest")->required();
  evaluate->add_option("--hyp", ev.hyp, "Hypotheses, one `id<TAB>text` per line")->required();
  evaluate->add_option("--report", ev.report, "Write the full JSON report here");
  evaluate->add_option("--csv", ev.csv, "Write the per-class table here");

  InspectOptions ins;
  auto* inspect = app.add_subcommand("inspect", "Render one replica and show its projected outline");
  inspect->add_option("--input", ins.input, "Input manifest")->required();
  inspect->add_option("--sample", ins.sample, "Sample id (its image path)")->required();
  inspect->add_option("--config", ins.common.config_path, "JSON configuration file");
  inspect->add_option("--factor", ins.common.factor, "Enlargement factor used for the replica plan");
  inspect->add_option("--seed", ins.common.seed, "Master seed");
  inspect->add_option("--replica", ins.replica, "Replica number, 1-based")->capture_default_str();
  inspect->add_option("--attempt", ins.attempt, "Scene draw attempt")->capture_default_str();
  inspect->add_option("--frame", ins.frame, "Override the planned trajectory frame");
  inspect->add_option("--out", ins.out, "PNG of the full frame with the quad outlined");
  inspect->add_option("--extracted", ins.extracted, "PNG of the extracted line");

  FractionOptions fr;
  auto* fraction = app.add_subcommand("take-fraction", "Write a class-stratified subset of a manifest");
  fraction->add_option("--input", fr.input, "Input manifest")->required();
  fraction->add_option("--out", fr.out, "Output manifest")->required();
  fraction->add_option("--fraction", fr.fraction, "Fraction of every class to keep")->required();
  fraction->add_option("--seed", fr.seed, "Selection seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

  try {
    if (augment->parsed()) return cmd_augment(aug, out);
    if (evaluate->parsed()) return cmd_evaluate(ev, out);
    if (inspect->parsed()) return cmd_inspect(ins, out);
    return cmd_take_fraction(fr, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ocraug
