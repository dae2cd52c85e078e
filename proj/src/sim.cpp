#include "rodwheel/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rodwheel {

State rk2_step(const State& x, double u, double dt, const Params& params) {
  auto field = [&](const Vector10d& v) { return forward_dynamics(State{v}, u, params); };
  return State{ralston_step(field, x.x, dt)};
}

void Scenario::validate() const {
  params.validate();
  controller.validate();
  validate_integration();
}

void Scenario::validate_integration() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(duration >= dt) || !std::isfinite(duration))
    throw std::invalid_argument("duration must be at least one step");
  if (sample_stride < 1) throw std::invalid_argument("sample_stride must be >= 1");
  if (!x0.x.allFinite()) throw std::invalid_argument("initial state must be finite");
  if (std::abs(x0.theta()) >= kFallTheta) {
    std::ostringstream os;
    os << "initial stand angle |theta| = " << std::abs(x0.theta()) << " is outside the valid range (< "
       << kFallTheta << ")";
    throw std::invalid_argument(os.str());
  }
}

long Scenario::steps() const { return std::lround(duration / dt); }

namespace {

Sample make_sample(double t, const State& x, double u, const Params& params) {
  Sample s;
  s.t = t;
  s.x = x;
  s.u = u;
  s.energy = total_energy(x, params);
  return s;
}

}  // namespace

Trajectory simulate(const Scenario& sc) {
  sc.validate_integration();
  Trajectory traj;
  traj.params = sc.params;
  traj.dt = sc.dt;
  const long n = sc.steps();
  traj.samples.reserve(static_cast<std::size_t>(n) + 1);

  const double dt = sc.dt;
  State x = sc.x0;
  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double u = control(x, sc.controller);
    Sample sample = make_sample(t, x, u, sc.params);
    Vector10d k1;
    try {
      const Dynamics dyn = evaluate_dynamics(x, u, sc.params);
      k1 = dyn.xdot;
      sample.lambda = dyn.accel.lambda();
    } catch (const SingularMass& e) {
      traj.fall = FallEvent{t, FallEvent::Reason::kSingularMass, e.what()};
      return traj;
    }
    traj.samples.push_back(sample);
    if (k == n) break;

    Vector10d next;
    try {
      const Vector10d k2 = forward_dynamics(State{Vector10d(x.x + (2.0 / 3.0) * dt * k1)}, u, sc.params);
      next = x.x + dt * (0.25 * k1 + 0.75 * k2);
    } catch (const SingularMass& e) {
      traj.fall = FallEvent{t, FallEvent::Reason::kSingularMass, e.what()};
      return traj;
    }

    const double t_next = static_cast<double>(k + 1) * dt;
    if (!next.allFinite()) {
      traj.fall = FallEvent{t_next, FallEvent::Reason::kSingularMass, "state became non-finite"};
      return traj;
    }
    x = State{next};
    if (std::abs(x.theta()) >= kFallTheta) {
      Sample last = make_sample(t_next, x, control(x, sc.controller), sc.params);
      try {
        last.lambda = evaluate_dynamics(x, last.u, sc.params).accel.lambda();
      } catch (const SingularMass&) {
        last.lambda.setConstant(std::numeric_limits<double>::quiet_NaN());
      }
      traj.samples.push_back(last);
      std::ostringstream os;
      os << "stand angle reached " << x.theta() << " rad at t = " << t_next << " s";
      traj.fall = FallEvent{t_next, FallEvent::Reason::kTiltLimit, os.str()};
      return traj;
    }
  }
  return traj;
}

EnergyAudit audit_energy(const Trajectory& traj) {
  EnergyAudit out;
  if (traj.samples.empty()) return out;
  const Sample& first = traj.samples.front();
  const double e0 = first.energy;
  const double scale = std::max(std::abs(e0), 1.0);
  double work = 0.0;
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const Sample& s = traj.samples[k];
    if (k > 0) {
      const Sample& prev = traj.samples[k - 1];
      work += prev.u * ((s.x.phi() - s.x.beta()) - (prev.x.phi() - prev.x.beta()));
    }
    const double de = s.energy - e0;
    out.drift = std::max(out.drift, std::abs(de) / scale);
    out.balance_residual = std::max(out.balance_residual, std::abs(de - work));
  }
  return out;
}

double audit_constraints(const Trajectory& traj) {
  double worst = 0.0;
  for (const Sample& s : traj.samples) {
    if (std::abs(s.x.theta()) >= kFallTheta) continue;  // terminal fall marker
    Dynamics dyn;
    try {
      dyn = evaluate_dynamics(s.x, s.u, traj.params);
    } catch (const SingularMass&) {
      continue;
    }
    const GenPos q = s.x.q();
    const Vector2d res =
        constraint_matrix(q, traj.params) * dyn.accel.ddq() + constraint_drift(q, dyn.dq, traj.params);
    worst = std::max(worst, res.norm());
  }
  return worst;
}

}  // namespace rodwheel
