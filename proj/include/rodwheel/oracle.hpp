#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rodwheel/types.hpp"

// Brute-force validators for the dynamics engine. Nothing here calls the
// hyper-dual code: the Lagrangian is a direct transcription of the expanded
// closed form, A(q) is re-typed, and every derivative is a finite difference.
namespace rodwheel::oracle {

struct FDConfig {
  double h = 1e-5;           // step for first derivatives
  double tolerance = 1e-6;   // relative agreement bound used by callers
  /// Second and nested derivatives use a central stencil with one Richardson
  /// extrapolation at step sqrt(h), which keeps roundoff near 1e-9.
  double second_order_step() const;
};

using ScalarFn = std::function<double(std::span<const double>)>;

/// Central differences (fn(x + h e_i) - fn(x - h e_i)) / 2h.
std::vector<double> fd_gradient(const ScalarFn& fn, std::span<const double> point, const FDConfig& cfg = {});

/// Central differences with one Richardson extrapolation at step `step`.
std::vector<double> fd_gradient_richardson(const ScalarFn& fn, std::span<const double> point, double step);

/// Mixed second derivative d2 fn / dx_i dx_j by the four-point stencil,
/// Richardson-extrapolated. Row-major n x n.
std::vector<double> fd_hessian(const ScalarFn& fn, std::span<const double> point, const FDConfig& cfg = {});

/// Expanded closed-form Lagrangian. With legacy = true the rod potential
/// term is mu (ell cos beta + r) cos theta; otherwise it is multiplied by g.
double closed_form_lagrangian(const GenPos& q, const GenVel& dq, const Params& params, bool legacy);

/// Constraint matrix, typed independently of the engine's template.
Matrix26d constraint_matrix(const GenPos& q, double r);

/// The residual S(q, dq, ddq, lambda) of the augmented system,
/// top: d/dt (A q'),  bottom: d/dt(dL/ddq) - dL/dq - A^T lambda,
/// with all time derivatives taken by finite differences along the flow.
Vector8d residual_s(const GenPos& q, const GenVel& dq, const GenVel& ddq, const Vector2d& lambda,
                    const Params& params, const FDConfig& cfg = {});

struct MassAndRhs {
  Matrix8d M = Matrix8d::Zero();
  Vector8d b = Vector8d::Zero();
};

/// Affine extraction: column j of M is S(seed j) - S(0), b = -S(q, dq, 0, 0).
MassAndRhs fd_mass_and_rhs(const GenPos& q, const GenVel& dq, const Params& params, const FDConfig& cfg = {});

/// Partials of a Lagrangian evaluated by finite differences, same block
/// layout as the engine's LagrangianPartials.
struct FDPartials {
  GenPos grad_q = GenPos::Zero();
  GenVel grad_dq = GenVel::Zero();
  Matrix6d hess_dq_dq = Matrix6d::Zero();
  Matrix6d hess_dq_q = Matrix6d::Zero();
};

using LagrangianFn = std::function<double(const GenPos&, const GenVel&)>;
FDPartials fd_lagrangian_partials(const LagrangianFn& L, const GenPos& q, const GenVel& dq,
                                  const FDConfig& cfg = {});

/// max |a - b| / max(max |b|, 1): discrepancy relative to the reference's scale.
double relative_discrepancy(const Eigen::MatrixXd& a, const Eigen::MatrixXd& reference);

}  // namespace rodwheel::oracle
