#include "rodwheel/lagrangian.hpp"

namespace rodwheel {

namespace {

detail::Coords<double> to_array(const Vector6d& v) {
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

detail::Coords<AD2> lift(const Vector6d& v) {
  detail::Coords<AD2> out;
  for (int i = 0; i < 6; ++i) out[i] = AD2{v[i]};
  return out;
}

void fill_velocity_hessian(const detail::Coords<AD2>& q, detail::Coords<AD2> dq, const Params& params,
                           Matrix6d& hess) {
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      dq[i].d1 = 1.0;
      dq[j].d2 = 1.0;
      const AD2 L = detail::lagrangian(q, dq, params);
      dq[i].d1 = 0.0;
      dq[j].d2 = 0.0;
      hess(i, j) = L.d12;
      hess(j, i) = L.d12;
    }
  }
}

}  // namespace

Vector3d disk_inertia(const Params& params) {
  const double mr2 = params.m * params.r * params.r;
  return {0.5 * mr2, 0.25 * mr2, 0.25 * mr2};
}

double kinetic_energy(const GenPos& q, const GenVel& dq, const Params& params) {
  return detail::kinetic_energy(to_array(q), to_array(dq), params);
}

double potential_energy(const GenPos& q, const Params& params) {
  return detail::potential_energy(to_array(q), params);
}

double lagrangian(const GenPos& q, const GenVel& dq, const Params& params) {
  return detail::lagrangian(to_array(q), to_array(dq), params);
}

LagrangianPartials lagrangian_partials(const GenPos& q, const GenVel& dq, const Params& params) {
  LagrangianPartials out;
  auto qa = lift(q);
  auto dqa = lift(dq);

  fill_velocity_hessian(qa, dqa, params, out.hess_dq_dq);

  // Mixed block: seed ddq_i along direction 1 and q_j along direction 2.
  // The first-order parts of these evaluations are the two gradients.
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      dqa[i].d1 = 1.0;
      qa[j].d2 = 1.0;
      const AD2 L = detail::lagrangian(qa, dqa, params);
      dqa[i].d1 = 0.0;
      qa[j].d2 = 0.0;
      out.hess_dq_q(i, j) = L.d12;
      out.grad_q[j] = L.d2;
      if (j == 0) out.grad_dq[i] = L.d1;
    }
  }
  return out;
}

Matrix6d velocity_hessian(const GenPos& q, const Params& params) {
  Matrix6d hess;
  fill_velocity_hessian(lift(q), lift(GenVel::Zero()), params, hess);
  return hess;
}

}  // namespace rodwheel
