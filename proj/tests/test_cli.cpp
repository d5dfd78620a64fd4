#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fixtures.hpp"
#include "minkflow/flow_solver.hpp"
#include "minkflow_app/commands.hpp"
#include "minkflow_app/config.hpp"
#include "minkflow_app/records_io.hpp"

using namespace minkflow;
using namespace minkflow::app;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("minkflow_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             std::to_string(counter++) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

fs::path write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* kCircle = R"({
  "unit_ball": {"harmonics": [[0, 1, 0]]},
  "initial_curvature": {"harmonics": [[0, 1, 0]]},
  "grid": 64,
  "solver": {"sigma": 0.5, "area_fraction": 0.05, "snapshot_every": 400}
})";

}  // namespace

TEST(Records, DoubleRoundTripIsExact) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 10000; ++i) {
    const double v = std::bit_cast<double>(rng() & 0x7fefffffffffffffULL) * (i % 2 ? 1.0 : -1.0);
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_EQ(parse_double(format_double(0.1)), 0.1);
  EXPECT_TRUE(std::isinf(parse_double(format_double(std::numeric_limits<double>::infinity()))));
  EXPECT_THROW((void)parse_double("1.5x"), std::invalid_argument);
  EXPECT_THROW((void)parse_double(""), std::invalid_argument);
}

TEST(Records, SnapshotCsvRoundTrip) {
  const auto s = fixture::skewed();
  SolverConfig cfg;
  cfg.snapshot_every = 50;
  cfg.area_fraction = 0.3;
  const auto res = run_flow(fixture::ball(s.ball, 64), fixture::curvature_samples(s, 64), cfg);
  ASSERT_GE(res.series.snapshots.size(), 2u);
  std::stringstream ss;
  write_snapshots_csv(ss, res.series.snapshots);
  const auto back = read_snapshots_csv(ss);
  ASSERT_EQ(back.size(), res.series.snapshots.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    const auto& a = res.series.snapshots[i];
    const auto& r = back[i];
    EXPECT_EQ(r.step, a.step);
    EXPECT_EQ(r.t, a.t);
    EXPECT_EQ(r.k, a.k);
    EXPECT_EQ(r.base.x, a.base.x);
    EXPECT_EQ(r.base.y, a.base.y);
    EXPECT_EQ(r.iso_ratio, a.iso_ratio);
    EXPECT_EQ(r.hausdorff, a.hausdorff);
    EXPECT_EQ(r.f_value, a.f_value);
    EXPECT_EQ(r.w, a.w);
    EXPECT_EQ(r.gage_product, a.gage_product);
  }
  std::stringstream again;
  write_snapshots_csv(again, back);
  std::stringstream first;
  write_snapshots_csv(first, res.series.snapshots);
  EXPECT_EQ(again.str(), first.str());
}

TEST(Records, SnapshotReaderRejectsSchemaMismatch) {
  std::stringstream bad("schema,step\nx,1\n");
  EXPECT_THROW((void)read_snapshots_csv(bad), std::runtime_error);
  SnapshotRecord r;
  r.k = {1.0, 2.0};
  std::string row = snapshot_row(r);
  row.replace(0, kSnapshotSchema.size(), "other.schema.v9");
  std::stringstream wrong(snapshot_header(2) + "\n" + row + "\n");
  EXPECT_THROW((void)read_snapshots_csv(wrong), std::runtime_error);
}

TEST(Records, FrameAndCurveRoundTrip) {
  std::vector<FramePoint> pts{{0.0, 1.0 / 3.0, -2.5e-17}, {0.1, 1e300, -0.0}};
  std::stringstream ss;
  write_frame_csv(ss, pts);
  const auto back = read_frame_csv(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].x, pts[0].x);
  EXPECT_EQ(back[0].y, pts[0].y);
  EXPECT_EQ(back[1].x, pts[1].x);
  std::vector<CurveSample> cs{{0.0, 1.1}, {3.14, 0.7}};
  std::stringstream cc;
  write_curve_csv(cc, cs);
  const auto cb = read_curve_csv(cc);
  EXPECT_EQ(cb[1].k, 0.7);
}

TEST(Config, ParsesFullDocument) {
  const auto c = parse_config(R"({
    "unit_ball": {"harmonics": [[0, 1, 0], [2, 0.2]]},
    "initial_curvature": {"harmonics": [[0, 1, 0], [4, 0.3, 0]]},
    "grid": 128, "base": [1, 2],
    "solver": {"sigma": 0.3, "area_fraction": 0.02, "max_time": 1.0, "max_steps": 100,
               "snapshot_every": 7, "tol_close": 1e-7, "tol_pos": 1e-9, "max_retries": 3},
    "certify": {"tol": 1e-9}, "output_dir": "x/y"})");
  EXPECT_EQ(c.grid, 128);
  EXPECT_EQ(c.ball_harmonics.size(), 2u);
  EXPECT_EQ(c.ball_harmonics[1].sin_coef, 0.0);
  EXPECT_EQ(c.solver.sigma, 0.3);
  EXPECT_EQ(c.solver.max_steps, 100);
  EXPECT_EQ(c.solver.snapshot_every, 7);
  EXPECT_EQ(c.solver.max_retries, 3);
  EXPECT_EQ(c.base.y, 2.0);
  EXPECT_EQ(c.certify_tol, 1e-9);
  EXPECT_EQ(c.output_dir, fs::path("x/y"));
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW((void)parse_config("{"), ConfigError);
  EXPECT_THROW((void)parse_config(R"({"gird": 64})"), ConfigError);
  EXPECT_THROW((void)parse_config(R"({"solver": {"sigma": 1.5}})"), ConfigError);
  EXPECT_THROW((void)parse_config(R"({"solver": {"sigmaa": 0.5}})"), ConfigError);
  EXPECT_THROW((void)parse_config(R"({"unit_ball": {"harmonics": [[0]]}})"), ConfigError);
  EXPECT_THROW((void)parse_config(R"({"grid": 64.5})"), ConfigError);
  EXPECT_THROW((void)load_config("/nonexistent/minkflow.json"), ConfigError);
}

TEST(Simulate, CircleWritesAllOutputs) {
  TempDir dir;
  const auto cfg = write_file(dir.path() / "c.json", kCircle);
  std::ostringstream out, err;
  const int code = cmd_simulate({cfg, dir.path() / "run", std::nullopt, std::nullopt, true}, out, err);
  ASSERT_EQ(code, kExitOk) << err.str();
  const auto report = nlohmann::json::parse(read_file(dir.path() / "run" / "report.json"));
  EXPECT_EQ(report["status"], "area_threshold");
  EXPECT_NEAR(report["t_v_est"].get<double>(), 0.5, 1e-5);
  EXPECT_TRUE(report["all_invariants_pass"].get<bool>());
  std::ifstream snaps(dir.path() / "run" / "snapshots.csv");
  const auto recs = read_snapshots_csv(snaps);
  ASSERT_FALSE(recs.empty());
  EXPECT_EQ(static_cast<std::size_t>(report["snapshots"].get<int>()), recs.size());
  EXPECT_EQ(recs.back().iso_ratio, report["final"]["iso_ratio"].get<double>());
  std::ifstream frame(dir.path() / "run" / "frames" / "0000.csv");
  const auto pts = read_frame_csv(frame);
  ASSERT_EQ(pts.size(), 64u);
  EXPECT_NEAR((Vec2{pts[16].x, pts[16].y} - Vec2{-1.0, 0.0}).norm(), 1.0, 1e-12);
  EXPECT_TRUE(fs::exists(dir.path() / "run" / "frames" / "0001.csv"));
  std::ifstream ball(dir.path() / "run" / "ball.csv");
  const auto boundary = read_frame_csv(ball);
  ASSERT_EQ(boundary.size(), 64u);
  for (const auto& p : boundary) EXPECT_NEAR(std::hypot(p.x, p.y), 1.0, 1e-14);
}

TEST(Simulate, OutputsAreByteIdentical) {
  TempDir dir;
  const auto cfg = write_file(dir.path() / "c.json", R"({
    "unit_ball": {"harmonics": [[0, 1, 0], [2, 0.2, 0]]},
    "initial_curvature": {"harmonics": [[0, 1, 0], [4, 0.3, 0]]},
    "grid": 64, "solver": {"area_fraction": 0.2, "snapshot_every": 100}})");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_simulate({cfg, dir.path() / "a", std::nullopt, std::nullopt, true}, out, err), kExitOk);
  ASSERT_EQ(cmd_simulate({cfg, dir.path() / "b", std::nullopt, std::nullopt, true}, out, err), kExitOk);
  for (const char* f : {"report.json", "snapshots.csv", "ball.csv", "frames/0000.csv", "frames/0001.csv"}) {
    EXPECT_EQ(read_file(dir.path() / "a" / f), read_file(dir.path() / "b" / f)) << f;
  }
}

TEST(Simulate, OddHarmonicBallIsAConfigError) {
  TempDir dir;
  const auto cfg = write_file(dir.path() / "c.json", R"({"unit_ball": {"harmonics": [[0, 1, 0], [3, 0.1, 0]]}})");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_simulate({cfg, dir.path() / "o", std::nullopt, std::nullopt, true}, out, err), kExitConfig);
  EXPECT_NE(err.str().find("order 3"), std::string::npos) << err.str();
  EXPECT_FALSE(fs::exists(dir.path() / "o" / "report.json"));
}

TEST(Simulate, OpenCurveReportsClosureResiduals) {
  TempDir dir;
  const auto cfg = write_file(dir.path() / "c.json", R"({
    "initial_curvature": {"harmonics": [[0, 1, 0], [1, 0.3, 0]]}, "grid": 64})");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_simulate({cfg, dir.path() / "o", std::nullopt, std::nullopt, true}, out, err), kExitConfig);
  EXPECT_NE(err.str().find("R_sin"), std::string::npos);
  EXPECT_NE(err.str().find("R_cos"), std::string::npos);
}

TEST(Simulate, OverridesApply) {
  TempDir dir;
  const auto cfg = write_file(dir.path() / "c.json", kCircle);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_simulate({cfg, dir.path() / "o", 100000, 32, true}, out, err), kExitOk);
  const auto report = nlohmann::json::parse(read_file(dir.path() / "o" / "report.json"));
  EXPECT_EQ(report["grid"], 32);
  EXPECT_EQ(report["snapshots"], 2);
  EXPECT_EQ(cmd_simulate({cfg, dir.path() / "o", std::nullopt, 15, true}, out, err), kExitConfig);
}

TEST(Simulate, SolverFailureStillWritesReport) {
  TempDir dir;
  const auto cfg = write_file(dir.path() / "c.json", R"({
    "unit_ball": {"harmonics": [[0, 1, 0], [2, 0.2, 0]]},
    "initial_curvature": {"harmonics": [[0, 1, 0], [4, 0.4, 0]]}, "grid": 64,
    "solver": {"sigma": 0.9, "tol_close": 1e-6, "max_retries": 0}})");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_simulate({cfg, dir.path() / "o", std::nullopt, std::nullopt, true}, out, err), kExitSolver);
  const auto report = nlohmann::json::parse(read_file(dir.path() / "o" / "report.json"));
  EXPECT_EQ(report["status"], "failed");
  EXPECT_NE(report["message"].get<std::string>().find("rejected"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir.path() / "o" / "snapshots.csv"));
}

TEST(Certify, PCirclePassesWithZeroSlacks) {
  TempDir dir;
  const auto cfg = write_file(dir.path() / "c.json", R"({
    "unit_ball": {"harmonics": [[0, 1, 0], [2, 0.2, 0]]}, "grid": 128})");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_certify({cfg, std::nullopt, dir.path() / "cert", std::nullopt, true}, out, err), kExitOk);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_NEAR(doc["isoperimetric_slack"].get<double>(), 0.0, 1e-9);
  EXPECT_NEAR(doc["e_value"].get<double>(), 0.0, 1e-9);
  EXPECT_TRUE(doc["pass"].get<bool>());
  EXPECT_EQ(read_file(dir.path() / "cert" / "certify.json"), out.str());
}

TEST(Certify, CurveFileInputs) {
  TempDir dir;
  const int n = 128;
  const auto e = fixture::ellipse();
  std::vector<CurveSample> s(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    s[i] = {t, 1.0 / e.mu(t)};
  }
  {
    std::ofstream f(dir.path() / "ellipse.csv");
    write_curve_csv(f, s);
  }
  std::ostringstream out, err;
  ASSERT_EQ(cmd_certify({std::nullopt, dir.path() / "ellipse.csv", std::nullopt, std::nullopt, true}, out, err),
            kExitOk);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_GT(doc["min_slack"].get<double>(), 0.0);

  s[3].k = -1.0;
  {
    std::ofstream f(dir.path() / "bad.csv");
    write_curve_csv(f, s);
  }
  std::ostringstream o2, e2;
  EXPECT_EQ(cmd_certify({std::nullopt, dir.path() / "bad.csv", std::nullopt, std::nullopt, true}, o2, e2),
            kExitConfig);
  EXPECT_NE(e2.str().find("3"), std::string::npos);

  s[3].k = 1.0 / e.mu(s[3].theta);
  s[5].theta += 0.01;
  {
    std::ofstream f(dir.path() / "offgrid.csv");
    write_curve_csv(f, s);
  }
  std::ostringstream o3, e3;
  EXPECT_EQ(cmd_certify({std::nullopt, dir.path() / "offgrid.csv", std::nullopt, std::nullopt, true}, o3, e3),
            kExitConfig);
}
