#include "minkflow_app/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "minkflow/convex_curve.hpp"
#include "minkflow/errors.hpp"
#include "minkflow/flow_solver.hpp"
#include "minkflow/isoperimetry.hpp"
#include "minkflow_app/acceptance.hpp"
#include "minkflow_app/config.hpp"
#include "minkflow_app/records_io.hpp"

namespace minkflow::app {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

std::shared_ptr<const UnitBall> build_ball(const RunConfig& cfg) {
  try {
    return std::make_shared<const UnitBall>(
        UnitBall::build(SupportFunction::from_harmonics(cfg.ball_harmonics), AngleGrid(cfg.grid)));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const InvalidUnitBall& e) {
    throw ConfigError(std::string("unit_ball: ") + e.what());
  }
}

std::vector<double> initial_curvature(const RunConfig& cfg, const UnitBall& ball) {
  try {
    return sample_harmonics(cfg.curvature_harmonics, ball.grid());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("initial_curvature: ") + e.what());
  }
}

/// Converts curve construction failures into configuration errors.
template <class F>
auto admissible(F&& make) {
  try {
    return make();
  } catch (const ClosureViolation& e) {
    throw ConfigError(std::string("initial curvature is not closure-admissible: R_sin = ") +
                      format_double(e.r_sin()) + ", R_cos = " + format_double(e.r_cos()));
  } catch (const NonPositiveCurvature& e) {
    throw ConfigError(std::string("initial curvature: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string frame_name(int index) {
  std::array<char, 16> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d.csv", index);
  return buf.data();
}

void write_json(const fs::path& path, const ordered_json& doc) {
  std::ofstream f(path, std::ios::binary);
  f << doc.dump(2) << '\n';
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

struct Invariant {
  const char* name;
  bool pass;
  double value;
  double tol;
};

std::vector<Invariant> check_invariants(const FlowResult& res, const SolverConfig& sc, double area_p) {
  const auto& tr = res.series.trace;
  const auto& snaps = res.series.snapshots;
  double k_dip = 0.0, closure = 0.0, j_drop = 0.0, iso_rise = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    k_dip = std::max(k_dip, tr.front().k_min - tr[i].k_min);
    closure = std::max(closure, std::max(std::abs(tr[i].r_sin), std::abs(tr[i].r_cos)) / tr[i].q_length);
    if (i > 0) {
      j_drop = std::max(j_drop, (tr[i - 1].j - tr[i].j) / (1.0 + std::abs(tr[i - 1].j)));
      iso_rise = std::max(iso_rise, tr[i].iso_ratio - tr[i - 1].iso_ratio);
    }
  }
  double slack = INFINITY;
  for (const auto& s : snaps) {
    slack = std::min({slack, s.isoperimetric_slack, s.bonnesen_rin, s.bonnesen_rout, s.refined_gage_slack,
                      s.gage_slack, s.median_bound_slack});
  }
  std::vector<Invariant> inv{
      {"positivity", k_dip <= sc.tol_pos, k_dip, sc.tol_pos},
      {"closure", closure <= sc.tol_close, closure, sc.tol_close},
      {"j_monotone", j_drop <= 1e-8, j_drop, 1e-8},
      {"iso_monotone", iso_rise <= 1e-10, iso_rise, 1e-10},
      {"inequality_slacks", slack >= -1e-8, slack, -1e-8},
  };
  if (tr.size() >= 3) {
    const auto ev = evolution_residuals(tr, area_p);
    inv.push_back({"entropy_identity", ev.entropy <= 1e-3, ev.entropy, 1e-3});
  }
  if (res.status == FlowStatus::AreaThreshold && sc.area_fraction <= 0.01 && snaps.size() >= 4) {
    double rise = 0.0;
    for (std::size_t i = snaps.size() / 2 + 1; i < snaps.size(); ++i) {
      rise = std::max(rise, snaps[i].hausdorff - snaps[i - 1].hausdorff);
    }
    inv.push_back({"hausdorff_decreasing", rise <= 1e-12, rise, 1e-12});
    const double final_h = snaps.back().hausdorff;
    inv.push_back({"hausdorff_final", final_h <= 2e-2, final_h, 2e-2});
  }
  return inv;
}

}  // namespace

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::shared_ptr<const UnitBall> ball;
  std::vector<double> k0;
  try {
    cfg = load_config(opts.config);
    if (opts.grid) cfg.grid = *opts.grid;
    if (opts.snapshots_every) cfg.solver.snapshot_every = *opts.snapshots_every;
    if (opts.out) cfg.output_dir = *opts.out;
    cfg.solver.validate();
    ball = build_ball(cfg);
    k0 = initial_curvature(cfg, *ball);
    admissible([&] { return FlowState::initial(ball, k0, cfg.base, cfg.solver.tol_close); });
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const fs::path dir = cfg.output_dir;
  const fs::path frames = dir / "frames";
  try {
    fs::create_directories(frames);
    for (const auto& entry : fs::directory_iterator(frames)) {
      if (entry.path().extension() == ".csv") fs::remove(entry.path());
    }
  } catch (const fs::filesystem_error& e) {
    err << "cannot prepare output directory: " << e.what() << '\n';
    return kExitConfig;
  }

  {
    std::vector<FramePoint> boundary(ball->size());
    for (int i = 0; i < ball->size(); ++i) boundary[i] = {ball->grid().angle(i), ball->p()[i].x, ball->p()[i].y};
    std::ofstream f(dir / "ball.csv", std::ios::binary);
    write_frame_csv(f, boundary);
  }
  SnapshotCsvWriter writer(dir / "snapshots.csv");
  int frame_index = 0;
  auto observer = [&](const FlowState& state, const SnapshotRecord& rec) {
    writer.write(rec);
    const auto verts = reconstruct_frame(state);
    std::vector<FramePoint> pts(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
      pts[i] = {state.curve().grid().angle(static_cast<int>(i)), verts[i].x, verts[i].y};
    }
    std::ofstream f(frames / frame_name(frame_index++), std::ios::binary);
    write_frame_csv(f, pts);
    if (!opts.quiet) {
      out << "t=" << format_double(rec.t) << " A=" << format_double(rec.area)
          << " iso/4A(P)=" << format_double(rec.iso_ratio / (4.0 * state.ball().area())) << '\n';
    }
  };

  const FlowResult res = run_flow(ball, k0, cfg.solver, cfg.base, observer);
  const double area_p = ball->area();
  const auto invariants = check_invariants(res, cfg.solver, area_p);
  const bool all_pass = std::ranges::all_of(invariants, [](const Invariant& i) { return i.pass; });

  ordered_json report;
  report["schema"] = "minkflow.report.v1";
  report["status"] = to_string(res.status);
  report["message"] = res.message;
  report["grid"] = cfg.grid;
  report["area_p"] = num(area_p);
  report["steps"] = res.steps;
  report["retries"] = res.retries;
  report["final_sigma"] = res.final_sigma;
  report["snapshots"] = res.series.snapshots.size();
  report["t_final"] = num(res.series.trace.back().t);
  report["t_v_est"] = num(res.vanishing_time_estimate);
  const SnapshotRecord& last = res.series.snapshots.back();
  report["final"] = {
      {"q_length", num(last.q_length)},   {"area", num(last.area)},
      {"iso_ratio", num(last.iso_ratio)}, {"iso_over_floor", num(last.iso_ratio / (4.0 * area_p))},
      {"k_min", num(last.k_min)},         {"k_max", num(last.k_max)},
      {"k_star", num(last.k_star)},       {"f_value", num(last.f_value)},
      {"hausdorff", num(last.hausdorff)}, {"r_in", num(last.r_in)},
      {"r_out", num(last.r_out)},         {"gage_product", num(last.gage_product)},
  };
  if (res.series.trace.size() >= 3) {
    const auto ev = evolution_residuals(res.series.trace, area_p);
    report["residuals"] = {{"area", num(ev.area)},
                           {"length", num(ev.length)},
                           {"iso", num(ev.iso)},
                           {"entropy", num(ev.entropy)},
                           {"samples", ev.samples}};
  }
  ordered_json inv = ordered_json::object();
  for (const auto& i : invariants) inv[i.name] = {{"pass", i.pass}, {"value", num(i.value)}, {"tol", i.tol}};
  report["invariants"] = inv;
  report["all_invariants_pass"] = all_pass;
  try {
    write_json(dir / "report.json", report);
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitSolver;
  }

  if (res.status == FlowStatus::Failed) {
    err << "solver failure: " << res.message << '\n';
    return kExitSolver;
  }
  if (!all_pass) {
    for (const auto& i : invariants) {
      if (!i.pass) err << "invariant " << i.name << " failed: " << format_double(i.value) << '\n';
    }
    return kExitSolver;
  }
  if (!opts.quiet) {
    out << "done: " << to_string(res.status) << ", " << res.steps << " steps, t_V_est "
        << format_double(res.vanishing_time_estimate) << '\n';
  }
  return kExitOk;
}

int cmd_certify(const CertifyOptions& opts, std::ostream& out, std::ostream& err) {
  std::optional<ConvexCurve> curve;
  double tol = 1e-8;
  try {
    RunConfig cfg;
    if (opts.config) cfg = load_config(*opts.config);
    tol = cfg.certify_tol;
    std::vector<double> k;
    if (opts.curve) {
      std::ifstream f(*opts.curve);
      if (!f) throw ConfigError("cannot read curve file " + opts.curve->string());
      std::vector<CurveSample> samples;
      try {
        samples = read_curve_csv(f);
      } catch (const std::exception& e) {
        throw ConfigError(opts.curve->string() + ": " + e.what());
      }
      if (opts.grid && *opts.grid != static_cast<int>(samples.size())) {
        throw ConfigError("--grid disagrees with the number of curve samples");
      }
      cfg.grid = static_cast<int>(samples.size());
      AngleGrid grid(cfg.grid);
      for (int i = 0; i < cfg.grid; ++i) {
        if (std::abs(samples[i].theta - grid.angle(i)) > 1e-9) {
          throw ConfigError("curve sample " + std::to_string(i) + " is not on the uniform grid");
        }
        k.push_back(samples[i].k);
      }
    } else if (opts.grid) {
      cfg.grid = *opts.grid;
    }
    auto ball = build_ball(cfg);
    if (!opts.curve) k = initial_curvature(cfg, *ball);
    curve.emplace(admissible([&] { return ConvexCurve::from_curvature(ball, k); }));
  } catch (const ConfigError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitConfig;
  }

  const IsoReport rep = gage_check(*curve);
  ordered_json doc;
  doc["schema"] = "minkflow.certify.v1";
  doc["grid"] = curve->size();
  doc["q_length"] = num(rep.q_length);
  doc["area"] = num(rep.area);
  doc["area_p"] = num(rep.area_p);
  doc["iso_ratio"] = num(rep.iso_ratio);
  doc["isoperimetric_slack"] = num(rep.isoperimetric_slack);
  doc["r_in"] = num(rep.r_in);
  doc["r_out"] = num(rep.r_out);
  doc["bonnesen_g_at_rin"] = num(rep.bonnesen_g_at_rin);
  doc["bonnesen_g_at_rout"] = num(rep.bonnesen_g_at_rout);
  doc["e_value"] = rep.e_value ? num(*rep.e_value) : ordered_json(nullptr);
  doc["f_value"] = num(rep.f_value);
  doc["k2_ds"] = num(rep.k2_ds);
  doc["gage_slack"] = num(rep.gage_slack);
  doc["refined_gage_slack"] = num(rep.refined_gage_slack);
  doc["schwarz_slack"] = num(rep.schwarz_slack);
  doc["k_star"] = num(rep.k_star);
  doc["median_bound_slack"] = num(rep.median_bound_slack);
  doc["radii_converged"] = rep.radii_converged;
  doc["tangency_warning"] = rep.tangency_warning;
  doc["chord_count"] = rep.chord_count;
  doc["min_slack"] = num(rep.min_slack());
  doc["tol"] = tol;
  const bool ok = rep.min_slack() >= -tol;
  doc["pass"] = ok;

  out << doc.dump(2) << '\n';
  if (opts.out) {
    try {
      fs::create_directories(*opts.out);
      write_json(*opts.out / "certify.json", doc);
    } catch (const std::exception& e) {
      err << e.what() << '\n';
      return kExitConfig;
    }
  }
  if (!ok) {
    err << "negative slack " << format_double(rep.min_slack()) << " beyond tolerance " << format_double(tol)
        << '\n';
    return kExitSlack;
  }
  return kExitOk;
}

int cmd_selftest(const SelftestOptions& opts, std::ostream& out, std::ostream& err) {
  AcceptanceOptions a;
  a.grid = opts.grid;
  a.area_offset = opts.area_offset;
  if (a.grid && (*a.grid < 16 || *a.grid % 2 != 0)) {
    err << "--grid must be an even number >= 16\n";
    return kExitConfig;
  }
  const auto results = run_acceptance(a, opts.quiet ? nullptr : &out);
  const auto passed = std::ranges::count_if(results, [](const CriterionResult& r) { return r.passed; });
  if (opts.quiet) {
    for (const auto& r : results) {
      if (!r.passed) out << format_result(r) << '\n';
    }
  }
  out << passed << "/" << results.size() << " criteria passed\n";
  return passed == static_cast<long>(results.size()) ? kExitOk : kExitSelftest;
}

}  // namespace minkflow::app
