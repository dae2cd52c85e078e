#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rodwheel/sim.hpp"

namespace rodwheel::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFall = 2;

struct SimulateOptions {
  std::filesystem::path scenario;
  std::optional<double> dt;
  std::optional<double> duration;
  std::optional<std::string> controller;  // none | case1 | case2
  std::optional<std::string> out;         // CSV path; "-" writes to stdout
  std::optional<int> stride;
};

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

/// One named audit with its measured value and bound.
struct AuditCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct AuditTolerances {
  double oracle = 1e-6;        // relative, engine vs finite differences
  double equilibrium = 1e-9;   // accelerations at the upright straight roll
  double energy = 1e-2;        // work-balance residual / max(|E0|, 1)
  double constraint = 1e-8;    // acceleration-level rolling residual
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  std::optional<FallEvent> fall;
  bool all_pass() const;
};

/// Oracle agreement at the initial state and `random_states` seeded states,
/// equilibrium sanity checks, then the trajectory audits. Uses the scenario's
/// params as given, so fixtures with deliberately wrong constants can be audited.
AuditReport run_audit(const Scenario& sc, int random_states = 100, const AuditTolerances& tol = {});

int cmd_audit(const std::filesystem::path& scenario, std::ostream& out, std::ostream& err);

struct SweepRow {
  double value = 0.0;
  bool fell = false;
  double t_fall = 0.0;
  double final_dphi = 0.0;
  double max_abs_theta = 0.0;
  double energy_drift = 0.0;
  std::string error;
};

/// "v1,v2,..." -> numbers. An empty string gives an empty list; empty or
/// malformed entries throw ConfigError.
std::vector<double> parse_value_list(std::string_view text);

/// Copy of `base` with one sweepable parameter replaced.
/// Names: theta0, dt, v_ref, k_p, k_d, k_theta. Throws std::invalid_argument.
Scenario apply_sweep_value(const Scenario& base, const std::string& param, double value);

/// Runs one independent simulation per value, concurrently, and returns rows in input order.
std::vector<SweepRow> run_sweep(const Scenario& base, const std::string& param, const std::vector<double>& values);

int cmd_sweep(const std::filesystem::path& scenario, const std::string& param, const std::vector<double>& values,
              std::ostream& out, std::ostream& err);

}  // namespace rodwheel::cli
