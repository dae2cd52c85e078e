#pragma once

#include <array>

#include "rodwheel/kinematics.hpp"

namespace rodwheel {

/// Diagonal of the disk's body-frame inertia: (m r^2 / 2, m r^2 / 4, m r^2 / 4).
Vector3d disk_inertia(const Params& params);

namespace detail {

template <class T>
using Coords = std::array<T, 6>;

// Kinetic energy 1/2 w^T I w + 1/2 m |c'|^2 + 1/2 mu |s'|^2, written once
// for any scalar type so that AD2 inputs give exact partials.
template <class T>
T kinetic_energy(const Coords<T>& q, const Coords<T>& dq, const Params& p) {
  const auto wheel = euler_rotation_and_rate(q[kPhi], q[kTheta], q[kPsi], dq[kPhi], dq[kTheta], dq[kPsi]);
  const Vec3<T> w = body_rate_from(wheel.R, wheel.dR);

  const double i1 = 0.5 * p.m * p.r * p.r;
  const double i23 = 0.25 * p.m * p.r * p.r;
  const T rot = 0.5 * (i1 * (w[0] * w[0]) + i23 * (w[1] * w[1]) + i23 * (w[2] * w[2]));

  const Vec3<T> dc{dq[kC1], dq[kC2], -p.r * (sin(q[kTheta]) * dq[kTheta])};
  const T trans = 0.5 * p.m * (dc[0] * dc[0] + dc[1] * dc[1] + dc[2] * dc[2]);

  // s' = c' + d/dt[R(beta, theta, psi)] (0, 0, ell)
  const auto rod = euler_rotation_and_rate(q[kBeta], q[kTheta], q[kPsi], dq[kBeta], dq[kTheta], dq[kPsi]);
  const Vec3<T> ds{dc[0] + p.ell * rod.dR[0][2], dc[1] + p.ell * rod.dR[1][2], dc[2] + p.ell * rod.dR[2][2]};
  const T tip = 0.5 * p.mu * (ds[0] * ds[0] + ds[1] * ds[1] + ds[2] * ds[2]);

  return rot + trans + tip;
}

template <class T>
T potential_energy(const Coords<T>& q, const Params& p) {
  const T c3 = p.r * cos(q[kTheta]);
  const Mat3<T> rod = euler_rotation(q[kBeta], q[kTheta], q[kPsi]);
  const T s3 = c3 + p.ell * rod[2][2];
  const double rod_weight = p.legacy_potential ? p.mu : p.mu * p.g;
  return p.m * p.g * c3 + rod_weight * s3;
}

template <class T>
T lagrangian(const Coords<T>& q, const Coords<T>& dq, const Params& p) {
  return kinetic_energy(q, dq, p) - potential_energy(q, p);
}

}  // namespace detail

double kinetic_energy(const GenPos& q, const GenVel& dq, const Params& params);
double potential_energy(const GenPos& q, const Params& params);
double lagrangian(const GenPos& q, const GenVel& dq, const Params& params);

/// First and second partials of L needed by the Euler-Lagrange equations.
/// d/dt(dL/ddq) = hess_dq_dq * ddq + hess_dq_q * dq.
struct LagrangianPartials {
  GenPos grad_q = GenPos::Zero();      // dL/dq
  GenVel grad_dq = GenVel::Zero();     // dL/ddq
  Matrix6d hess_dq_dq = Matrix6d::Zero();  // (i, j) = d2L / ddq_i ddq_j
  Matrix6d hess_dq_q = Matrix6d::Zero();   // (i, j) = d2L / ddq_i dq_j
};

/// All four blocks via hyper-dual seeding (21 + 36 evaluations of L).
LagrangianPartials lagrangian_partials(const GenPos& q, const GenVel& dq, const Params& params);

/// Only d2L/ddq ddq. It does not depend on dq, so dq = 0 is used.
Matrix6d velocity_hessian(const GenPos& q, const Params& params);

}  // namespace rodwheel
