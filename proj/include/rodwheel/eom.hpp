#pragma once

#include "rodwheel/lagrangian.hpp"

namespace rodwheel {

namespace detail {

// Rolling constraint A(q) q' = 0 (no tangential or lateral slip of the contact point).
template <class T>
std::array<std::array<T, 6>, 2> constraint_rows(const Coords<T>& q, double r) {
  const T ct = cos(q[kTheta]), st = sin(q[kTheta]);
  const T cp = cos(q[kPsi]), sp = sin(q[kPsi]);
  return {{{T(1.0), T(0.0), -r * sp, -r * (cp * ct), r * (sp * st), T(0.0)},
           {T(0.0), T(1.0), r * cp, -r * (sp * ct), -r * (cp * st), T(0.0)}}};
}

}  // namespace detail

/// Solution (lambda1, lambda2, c1'', c2'', phi'', theta'', psi'', beta'') of M v = b + b_u u.
struct AccelSolution {
  Vector8d v = Vector8d::Zero();

  Vector2d lambda() const { return v.head<2>(); }
  GenVel ddq() const { return v.tail<6>(); }
  /// (phi'', theta'', psi'', beta''): the selection applied to the solved vector.
  Eigen::Vector4d rate_accelerations() const { return v.tail<4>(); }
};

/// The augmented linear system at one state.
struct MassSystem {
  Matrix8d M = Matrix8d::Zero();
  Vector8d b = Vector8d::Zero();
};

/// Torque input direction in unknown-row order: +u on the phi equation, -u on beta.
Vector8d control_direction();

Matrix26d constraint_matrix(const GenPos& q, const Params& params);

/// (c1', c2') implied by rolling without slip at spin/stand/heading rates.
Vector2d constrained_velocities(const GenPos& q, const Vector3d& rates, const Params& params);

/// Full generalized velocity with (c1', c2') reconstructed from the constraints.
GenVel full_velocity(const State& x, const Params& params);

/// (dA/dq q') q', the velocity-product term of d/dt (A q').
Vector2d constraint_drift(const GenPos& q, const GenVel& dq, const Params& params);

/// Top rows (0 | A), bottom rows (-A^T | d2L/ddq2). Depends on q only.
Matrix8d mass_matrix(const GenPos& q, const Params& params);

/// Top rows -(dA/dq q') q', bottom rows dL/dq - d2L/(ddq dq) q'.
Vector8d rhs_vector(const GenPos& q, const GenVel& dq, const Params& params);

/// M and b from a single pass over the Lagrangian partials.
MassSystem assemble(const GenPos& q, const GenVel& dq, const Params& params);

/// Dense LU with partial pivoting. Throws SingularMass when a pivot falls
/// below 1e-12 ||M|| or the residual exceeds 1e-9 (||M|| ||v|| + ||rhs||).
Vector8d solve_mass_system(const Matrix8d& M, const Vector8d& rhs);

/// Everything one evaluation of the dynamics produces.
struct Dynamics {
  Vector10d xdot = Vector10d::Zero();
  AccelSolution accel;
  GenVel dq = GenVel::Zero();
};

Dynamics evaluate_dynamics(const State& x, double u, const Params& params);

/// x' = f(x, u).
Vector10d forward_dynamics(const State& x, double u, const Params& params);

/// (lambda1, lambda2); the generalized ground force is A^T lambda.
Vector2d ground_reaction(const State& x, double u, const Params& params);

/// Total energy with (c1', c2') reconstructed from the constraints.
double total_energy(const State& x, const Params& params);

}  // namespace rodwheel
