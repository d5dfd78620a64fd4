#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "minkflow_app/commands.hpp"

int main(int argc, char** argv) {
  using namespace minkflow::app;

  CLI::App app{"Minkowski curvature flow of convex curves"};
  app.require_subcommand(1);

  SimulateOptions sim;
  std::string sim_config, sim_out;
  int sim_every = 0, sim_grid = 0;
  auto* simulate = app.add_subcommand("simulate", "Run the flow and write snapshots, frames and a report");
  simulate->add_option("--config", sim_config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", sim_out, "Output directory (overrides the config)");
  simulate->add_option("--snapshots-every", sim_every, "Accepted steps between snapshots")->check(CLI::PositiveNumber);
  simulate->add_option("--grid", sim_grid, "Number of grid nodes (overrides the config)");
  simulate->add_flag("--quiet", sim.quiet, "Suppress progress output");

  CertifyOptions cert;
  std::string cert_config, cert_curve, cert_out;
  int cert_grid = 0;
  auto* certify = app.add_subcommand("certify", "Evaluate every isoperimetric inequality on one curve");
  certify->add_option("--config", cert_config, "JSON configuration (unit ball, curvature)")->check(CLI::ExistingFile);
  certify->add_option("--curve", cert_curve, "CSV file with columns theta,k")->check(CLI::ExistingFile);
  certify->add_option("--out", cert_out, "Directory to also write certify.json into");
  certify->add_option("--grid", cert_grid, "Number of grid nodes");
  certify->add_flag("--quiet", cert.quiet, "Suppress progress output");

  SelftestOptions self;
  int self_grid = 0;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--grid", self_grid, "Force every grid to this size");
  selftest->add_option("--fault-area-offset", self.area_offset, "Corrupt the cached unit-ball area by this amount");
  selftest->add_flag("--quiet", self.quiet, "Print failing criteria only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  auto opt_int = [](int v) { return v ? std::optional<int>(v) : std::nullopt; };
  try {
    if (*simulate) {
      sim.config = sim_config;
      if (!sim_out.empty()) sim.out = sim_out;
      sim.snapshots_every = opt_int(sim_every);
      sim.grid = opt_int(sim_grid);
      return cmd_simulate(sim, std::cout, std::cerr);
    }
    if (*certify) {
      if (!cert_config.empty()) cert.config = cert_config;
      if (!cert_curve.empty()) cert.curve = cert_curve;
      if (!cert_out.empty()) cert.out = cert_out;
      cert.grid = opt_int(cert_grid);
      return cmd_certify(cert, std::cout, std::cerr);
    }
    self.grid = opt_int(self_grid);
    return cmd_selftest(self, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}
