#include "rodwheel/eom.hpp"

#include <cmath>
#include <sstream>

namespace rodwheel {

Vector8d control_direction() {
  Vector8d bu = Vector8d::Zero();
  bu[2 + kPhi] = 1.0;
  bu[2 + kBeta] = -1.0;
  return bu;
}

Matrix26d constraint_matrix(const GenPos& q, const Params& params) {
  const detail::Coords<double> qa{q[0], q[1], q[2], q[3], q[4], q[5]};
  const auto rows = detail::constraint_rows(qa, params.r);
  Matrix26d A;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 6; ++j) A(i, j) = rows[i][j];
  return A;
}

Vector2d constrained_velocities(const GenPos& q, const Vector3d& rates, const Params& params) {
  const double r = params.r;
  const double st = std::sin(q[kTheta]), ct = std::cos(q[kTheta]);
  const double sp = std::sin(q[kPsi]), cp = std::cos(q[kPsi]);
  const double dphi = rates[0], dtheta = rates[1], dpsi = rates[2];
  return {r * sp * dphi + r * cp * ct * dtheta - r * sp * st * dpsi,
          -r * cp * dphi + r * sp * ct * dtheta + r * cp * st * dpsi};
}

GenVel full_velocity(const State& x, const Params& params) {
  const GenPos q = x.q();
  const Vector2d dc = constrained_velocities(q, Vector3d{x.dphi(), x.dtheta(), x.dpsi()}, params);
  GenVel dq;
  dq << dc[0], dc[1], x.dphi(), x.dtheta(), x.dpsi(), x.dbeta();
  return dq;
}

Vector2d constraint_drift(const GenPos& q, const GenVel& dq, const Params& params) {
  // Seed q along dq: the first-order part of A(q) is then (dA/dq . dq).
  detail::Coords<AD2> qa;
  for (int i = 0; i < 6; ++i) qa[i] = AD2{q[i], dq[i], 0.0, 0.0};
  const auto rows = detail::constraint_rows(qa, params.r);
  Vector2d out;
  for (int i = 0; i < 2; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 6; ++j) acc += rows[i][j].d1 * dq[j];
    out[i] = acc;
  }
  return out;
}

namespace {

MassSystem build(const Matrix26d& A, const Matrix6d& hess_dq_dq) {
  MassSystem sys;
  sys.M.block<2, 6>(0, 2) = A;
  sys.M.block<6, 2>(2, 0) = -A.transpose();
  sys.M.block<6, 6>(2, 2) = hess_dq_dq;
  return sys;
}

}  // namespace

Matrix8d mass_matrix(const GenPos& q, const Params& params) {
  return build(constraint_matrix(q, params), velocity_hessian(q, params)).M;
}

MassSystem assemble(const GenPos& q, const GenVel& dq, const Params& params) {
  const LagrangianPartials lp = lagrangian_partials(q, dq, params);
  MassSystem sys = build(constraint_matrix(q, params), lp.hess_dq_dq);
  sys.b.head<2>() = -constraint_drift(q, dq, params);
  sys.b.tail<6>() = lp.grad_q - lp.hess_dq_q * dq;
  return sys;
}

Vector8d rhs_vector(const GenPos& q, const GenVel& dq, const Params& params) {
  return assemble(q, dq, params).b;
}

Vector8d solve_mass_system(const Matrix8d& M, const Vector8d& rhs) {
  const double norm_m = M.cwiseAbs().rowwise().sum().maxCoeff();
  const Eigen::PartialPivLU<Matrix8d> lu(M);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > 1e-12 * norm_m)) {
    std::ostringstream os;
    os << "mass matrix is singular (pivot " << min_pivot << ", norm " << norm_m << ")";
    throw SingularMass(os.str());
  }
  const Vector8d v = lu.solve(rhs);
  // Normwise backward error; a bare ||rhs|| scale would reject valid solves when rhs ~ 0.
  const double residual = (M * v - rhs).lpNorm<Eigen::Infinity>();
  const double scale = norm_m * v.lpNorm<Eigen::Infinity>() + rhs.lpNorm<Eigen::Infinity>();
  if (!(residual <= 1e-9 * scale)) {
    std::ostringstream os;
    os << "mass system residual " << residual << " exceeds tolerance for scale " << scale;
    throw SingularMass(os.str());
  }
  return v;
}

Dynamics evaluate_dynamics(const State& x, double u, const Params& params) {
  Dynamics out;
  const GenPos q = x.q();
  out.dq = full_velocity(x, params);
  const MassSystem sys = assemble(q, out.dq, params);
  out.accel.v = solve_mass_system(sys.M, sys.b + control_direction() * u);
  out.xdot.head<2>() = out.dq.head<2>();
  out.xdot.segment<4>(2) = x.rates();
  out.xdot.tail<4>() = out.accel.rate_accelerations();
  return out;
}

Vector10d forward_dynamics(const State& x, double u, const Params& params) {
  return evaluate_dynamics(x, u, params).xdot;
}

Vector2d ground_reaction(const State& x, double u, const Params& params) {
  return evaluate_dynamics(x, u, params).accel.lambda();
}

double total_energy(const State& x, const Params& params) {
  const GenPos q = x.q();
  return kinetic_energy(q, full_velocity(x, params), params) + potential_energy(q, params);
}

}  // namespace rodwheel
