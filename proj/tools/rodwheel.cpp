// rodwheel: run, audit and sweep rodwheel scenarios.

#include <iostream>

#include "CLI11.hpp"
#include "rodwheel/cli.hpp"

int main(int argc, char** argv) {
  namespace rc = rodwheel::cli;

  CLI::App app{"Rodwheel dynamics: simulate, audit and sweep scenario files"};
  app.require_subcommand(1);

  rc::SimulateOptions sim;
  double dt = 0.0, duration = 0.0;
  std::string controller, out_path;
  int stride = 1;
  auto* simulate = app.add_subcommand("simulate", "Integrate a scenario and write its trajectory as CSV");
  simulate->add_option("file", sim.scenario, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
  auto* dt_opt = simulate->add_option("--dt", dt, "Step size [s]");
  auto* dur_opt = simulate->add_option("--duration", duration, "Horizon [s]");
  auto* ctl_opt = simulate->add_option("--controller", controller, "Controller preset")
                      ->check(CLI::IsMember({"none", "case1", "case2"}));
  auto* out_opt = simulate->add_option("--out", out_path, "CSV output path ('-' for stdout)");
  auto* stride_opt = simulate->add_option("--stride", stride, "Write every n-th sample");

  std::string audit_file;
  auto* audit = app.add_subcommand("audit", "Check the engine against finite differences and audit a run");
  audit->add_option("file", audit_file, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);

  std::string sweep_file, param, values;
  auto* sweep = app.add_subcommand("sweep", "Run one scenario per parameter value");
  sweep->add_option("file", sweep_file, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--param", param, "theta0, dt, v_ref, k_p, k_d or k_theta")->required();
  sweep->add_option("--values", values, "Comma separated values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? rc::kExitOk : rc::kExitError;
  }

  if (*simulate) {
    if (*dt_opt) sim.dt = dt;
    if (*dur_opt) sim.duration = duration;
    if (*ctl_opt) sim.controller = controller;
    if (*out_opt) sim.out = out_path;
    if (*stride_opt) sim.stride = stride;
    return rc::cmd_simulate(sim, std::cout, std::cerr);
  }
  if (*audit) return rc::cmd_audit(audit_file, std::cout, std::cerr);
  std::vector<double> list;
  try {
    list = rc::parse_value_list(values);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rc::kExitError;
  }
  return rc::cmd_sweep(sweep_file, param, list, std::cout, std::cerr);
}
