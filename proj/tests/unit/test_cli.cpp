#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ocraug/cli.hpp"
#include "ocraug/config.hpp"
#include "ocraug/image_io.hpp"
#include "ocraug/manifest.hpp"
#include "ocraug/pipeline.hpp"
#include "synth.hpp"

using namespace ocraug;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "ocraug");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TEST(Cli, UnknownFlagIsAUsageError) {
  EXPECT_EQ(run({"augment", "--bogus"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, EvaluateNamesAMissingHypothesisFile) {
  const auto dir = synth::temp_dir("cli-nohyp");
  std::ofstream(dir / "ref.tsv") << "a\teasy\tx\n";
  const CliRun r = run({"evaluate", "--ref", (dir / "ref.tsv").string(), "--hyp", (dir / "nope.tsv").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.err, (dir / "nope.tsv").string())) << r.err;
}

TEST(Cli, EvaluatePerfectHypotheses) {
  const auto dir = synth::temp_dir("cli-perfect");
  std::ofstream(dir / "ref.tsv") << "a\teasy\tone two\nb\thard\tthree\n";
  std::ofstream(dir / "hyp.tsv") << "a\tone two\nb\tthree\n";
  const CliRun r = run({"evaluate", "--ref", (dir / "ref.tsv").string(), "--hyp", (dir / "hyp.tsv").string(),
                     "--report", (dir / "r.json").string(), "--csv", (dir / "r.csv").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "Overall CER 0.00% WER 0.00%")) << r.out;
  EXPECT_TRUE(std::filesystem::exists(dir / "r.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "r.csv"));
}

TEST(Cli, EvaluateReportsMissingAndExcludedLines) {
  const auto dir = synth::temp_dir("cli-missing");
  std::ofstream(dir / "ref.tsv") << "a\teasy\tabcd\nb\tmedium\twxyz\n";
  std::ofstream(dir / "hyp.tsv") << "a\tabcd\n";
  const CliRun r = run({"evaluate", "--ref", (dir / "ref.tsv").string(), "--hyp", (dir / "hyp.tsv").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "Medium CER 100.00% WER 100.00%")) << r.out;
  EXPECT_TRUE(contains(r.out, "Overall CER 50.00% WER 50.00%")) << r.out;
  EXPECT_TRUE(contains(r.out, "missing hypotheses 1")) << r.out;
}

TEST(Cli, AugmentPrintsCounts) {
  const auto dir = synth::temp_dir("cli-augment");
  synth::write_dataset(dir / "in", 5, 9);
  const std::string input = (dir / "in" / "manifest.tsv").string();

  const CliRun copy = run({"augment", "--input", input, "--out", (dir / "f1").string(), "--factor", "1"});
  EXPECT_EQ(copy.code, 0) << copy.err;
  EXPECT_TRUE(contains(copy.out, "frames rendered 0")) << copy.out;

  const CliRun a = run({"augment", "--input", input, "--out", (dir / "a").string(), "--factor", "3", "--seed", "5"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_TRUE(contains(a.out, "seed 5\n")) << a.out;
  EXPECT_TRUE(contains(a.out, "samples 5 (skipped 0)")) << a.out;
  EXPECT_TRUE(contains(a.out, "augmented lines written 10, passed through 0")) << a.out;
  EXPECT_TRUE(contains(a.out, "(15 lines)")) << a.out;

  const CliRun b = run({"augment", "--input", input, "--out", (dir / "b").string(), "--factor", "3", "--seed", "5",
                     "--workers", "2"});
  EXPECT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(synth::tree_digest(dir / "a"), synth::tree_digest(dir / "b"));
}

TEST(Cli, AugmentRejectsABadConfig) {
  const auto dir = synth::temp_dir("cli-badconfig");
  synth::write_dataset(dir / "in", 1, 1);
  std::ofstream(dir / "c.json") << R"({"trajectory": {"frames_per_scene": 0}})";
  const CliRun r = run({"augment", "--input", (dir / "in" / "manifest.tsv").string(), "--out", (dir / "o").string(),
                     "--config", (dir / "c.json").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.err, "error:")) << r.err;
}

TEST(Cli, InspectMatchesTheLibrary) {
  const auto dir = synth::temp_dir("cli-inspect");
  const auto lines = synth::write_dataset(dir / "in", 2, 6);
  const std::string input = (dir / "in" / "manifest.tsv").string();
  const std::string id = lines[1].image_path;

  EXPECT_EQ(run({"inspect", "--input", input, "--sample", "nope.png"}).code, 1);
  EXPECT_EQ(run({"inspect", "--input", input, "--sample", id, "--factor", "3", "--replica", "3"}).code, 1);

  std::vector<std::string> args = {"inspect", "--input", input, "--sample", id, "--factor", "3",
                                   "--seed", "21", "--replica", "2"};
  auto with_out = [&](const std::string& name) {
    auto a = args;
    a.insert(a.end(), {"--out", (dir / name).string(), "--extracted", (dir / ("x" + name)).string()});
    return a;
  };
  const CliRun r1 = run(with_out("one.png"));
  const CliRun r2 = run(with_out("two.png"));
  ASSERT_EQ(r1.code, 0) << r1.err;
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_EQ(read_file(dir / "one.png"), read_file(dir / "two.png"));

  AugmentConfig config = default_config();
  config.seed = 21;
  config.enlargement_factor = 3;
  const Raster frame = read_image(dir / "one.png");
  EXPECT_EQ(frame.width, config.render_width);
  EXPECT_EQ(frame.height, config.render_height);

  const ReplicaAttempt a = run_replica_attempt(lines[1].image, config, id, 2, 0);
  ASSERT_TRUE(a.frame.has_value());
  std::string quad = "quad";
  for (const Vec2& c : a.frame->quad.corners) quad += " " + g17(c.x()) + "," + g17(c.y());
  EXPECT_TRUE(contains(r1.out, quad + "\n")) << r1.out;
  EXPECT_TRUE(contains(r1.out, "frame " + std::to_string(plan_replica(2, 3, 10).frame_index) + "\n")) << r1.out;
  if (a.extract.line) {
    EXPECT_EQ(read_image(dir / "xone.png"), *a.extract.line);
  }
}

TEST(Cli, TakeFractionWritesALoadableManifest) {
  const auto dir = synth::temp_dir("cli-fraction");
  synth::write_dataset(dir / "in", 20, 3);
  const CliRun r = run({"take-fraction", "--input", (dir / "in" / "manifest.tsv").string(), "--out",
                     (dir / "sub" / "half.tsv").string(), "--fraction", "0.4", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "kept 8 of 20 lines")) << r.out;
  const LoadResult loaded = load_manifest(dir / "sub" / "half.tsv", {true, false});
  EXPECT_EQ(loaded.samples.size(), 8u);
  EXPECT_EQ(run({"take-fraction", "--input", (dir / "in" / "manifest.tsv").string(), "--out",
                 (dir / "bad.tsv").string(), "--fraction", "2"})
                .code,
            1);
}
