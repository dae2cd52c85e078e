#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rodwheel/control.hpp"
#include "rodwheel/eom.hpp"

namespace rodwheel {

/// Stand angle at which a run is declared a fall. Kept below pi/2 so the
/// mass matrix is still well conditioned when the run stops.
inline constexpr double kFallTheta = 1.4;

/// Two-stage Ralston scheme x + dt (k1/4 + 3 k2/4), k2 = f(x + 2/3 dt k1).
template <class Vec, class Field>
Vec ralston_step(Field&& f, const Vec& x, double dt) {
  const Vec k1 = f(x);
  const Vec k2 = f(Vec(x + (2.0 / 3.0) * dt * k1));
  return x + dt * (0.25 * k1 + 0.75 * k2);
}

/// One RK2 step of the rodwheel with u held constant over the step.
State rk2_step(const State& x, double u, double dt, const Params& params);

struct Sample {
  double t = 0.0;
  State x;
  double u = 0.0;       // torque applied over [t, t + dt)
  double energy = 0.0;
  Vector2d lambda = Vector2d::Zero();
};

struct FallEvent {
  enum class Reason { kTiltLimit, kSingularMass };
  double t = 0.0;
  Reason reason = Reason::kTiltLimit;
  std::string message;
};

struct Trajectory {
  Params params;
  double dt = 0.0;
  std::vector<Sample> samples;
  std::optional<FallEvent> fall;

  bool fell() const { return fall.has_value(); }
};

struct Scenario {
  Params params;
  State x0;
  ControllerSpec controller;
  double dt = 0.01;
  double duration = 8.0;
  std::string output_path;
  int sample_stride = 1;
  bool audit_energy = true;
  bool audit_constraints = true;

  /// Physical constants, controller and integration settings.
  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
  /// Integration settings and initial state only.
  void validate_integration() const;
  /// Number of integration steps covering the duration.
  long steps() const;
};

/// Fixed-step integration from t = 0 to the scenario duration. The
/// controller is sampled once per step. Stops early, with `fall` set,
/// when |theta| reaches kFallTheta or the mass system turns singular.
/// Only the integration settings are validated here; physical constants are
/// checked where scenarios enter the program (file loader, CLI).
Trajectory simulate(const Scenario& sc);

struct EnergyAudit {
  double drift = 0.0;             // max |E(t) - E(0)| / max(|E(0)|, 1)
  double balance_residual = 0.0;  // max |E(t) - E(0) - W(t)|
};

/// W(t) accumulates u_k (phi - beta) increments over each hold interval,
/// which is the exact motor work when u is constant across the step.
EnergyAudit audit_energy(const Trajectory& traj);

/// Max over samples of |A qdd + (dA/dq qd) qd| at the solved accelerations.
/// The terminal sample of a fall lies past the tilt limit and is skipped.
double audit_constraints(const Trajectory& traj);

}  // namespace rodwheel
