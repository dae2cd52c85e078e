#include "rodwheel/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace rodwheel::oracle {

double FDConfig::second_order_step() const { return std::sqrt(h); }

std::vector<double> fd_gradient(const ScalarFn& fn, std::span<const double> point, const FDConfig& cfg) {
  std::vector<double> x(point.begin(), point.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + cfg.h;
    const double fp = fn(x);
    x[i] = xi - cfg.h;
    const double fm = fn(x);
    x[i] = xi;
    grad[i] = (fp - fm) / (2.0 * cfg.h);
  }
  return grad;
}

std::vector<double> fd_gradient_richardson(const ScalarFn& fn, std::span<const double> point, double step) {
  std::vector<double> x(point.begin(), point.end());
  std::vector<double> grad(x.size());
  auto central = [&](std::size_t i, double h) {
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = fn(x);
    x[i] = xi - h;
    const double fm = fn(x);
    x[i] = xi;
    return (fp - fm) / (2.0 * h);
  };
  for (std::size_t i = 0; i < x.size(); ++i) {
    grad[i] = (4.0 * central(i, 0.5 * step) - central(i, step)) / 3.0;
  }
  return grad;
}

std::vector<double> fd_hessian(const ScalarFn& fn, std::span<const double> point, const FDConfig& cfg) {
  const std::size_t n = point.size();
  std::vector<double> x(point.begin(), point.end());
  std::vector<double> hess(n * n);
  auto stencil = [&](std::size_t i, std::size_t j, double h) {
    auto at = [&](double si, double sj) {
      std::vector<double> y = x;
      y[i] += si * h;
      y[j] += sj * h;
      return fn(y);
    };
    return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
  };
  const double step = cfg.second_order_step();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double value = (4.0 * stencil(i, j, 0.5 * step) - stencil(i, j, step)) / 3.0;
      hess[i * n + j] = value;
      hess[j * n + i] = value;
    }
  }
  return hess;
}

double closed_form_lagrangian(const GenPos& q, const GenVel& dq, const Params& p, bool legacy) {
  const double m = p.m, g = p.g, r = p.r, mu = p.mu, l = p.ell;
  const double phi = q[2], th = q[3], ps = q[4], be = q[5];
  const double dc1 = dq[0], dc2 = dq[1], dphi = dq[2], dth = dq[3], dps = dq[4], dbe = dq[5];
  const double sphi = std::sin(phi), cphi = std::cos(phi);
  const double sth = std::sin(th), cth = std::cos(th);
  const double sps = std::sin(ps), cps = std::cos(ps);
  const double sbe = std::sin(be), cbe = std::cos(be);
  auto sq = [](double v) { return v * v; };

  double L = m / 8.0 * r * r * sq(dth * sphi - dps * cth * cphi) +
             m / 8.0 * r * r * sq(dth * cphi + dps * sphi * cth) +
             m / 4.0 * r * r * sq(dphi - dps * sth) +
             m / 2.0 * (r * r * dth * dth * sth * sth + dc1 * dc1 + dc2 * dc2);
  const double rod_potential = mu * (l * cbe + r) * cth;
  L -= legacy ? rod_potential : g * rod_potential;
  L += mu / 2.0 *
       sq(l * sps * cbe * cth * dth + l * (sbe * sps + sth * cbe * cps) * dps -
          l * (sbe * sth * sps + cbe * cps) * dbe + dc2);
  L += mu / 2.0 *
       sq(l * cbe * cth * cps * dth + l * (sbe * cps - sth * sps * cbe) * dps +
          l * (sps * cbe - sbe * sth * cps) * dbe + dc1);
  L += mu / 2.0 * sq(l * sbe * cth * dbe + (l * sth * cbe + r * sth) * dth);
  L -= g * m * r * cth;
  return L;
}

Matrix26d constraint_matrix(const GenPos& q, double r) {
  const double th = q[3], ps = q[4];
  Matrix26d A;
  A << 1, 0, -r * std::sin(ps), -r * std::cos(ps) * std::cos(th), r * std::sin(ps) * std::sin(th), 0,
      0, 1, r * std::cos(ps), -r * std::sin(ps) * std::cos(th), -r * std::cos(ps) * std::sin(th), 0;
  return A;
}

namespace {

// d/dt g(t) at t = 0 by a Richardson-extrapolated central difference.
template <class Fn>
auto time_derivative(Fn&& g, double step) {
  auto central = [&](double h) { return ((g(h) - g(-h)) / (2.0 * h)).eval(); };
  return ((4.0 * central(0.5 * step) - central(step)) / 3.0).eval();
}

GenVel velocity_gradient(const GenPos& q, const GenVel& dq, const Params& p, double step) {
  const ScalarFn fn = [&](std::span<const double> v) {
    return closed_form_lagrangian(q, GenVel(Eigen::Map<const GenVel>(v.data())), p, p.legacy_potential);
  };
  const auto g = fd_gradient_richardson(fn, std::span<const double>(dq.data(), 6), step);
  return GenVel(Eigen::Map<const GenVel>(g.data()));
}

GenPos position_gradient(const GenPos& q, const GenVel& dq, const Params& p, double step) {
  const ScalarFn fn = [&](std::span<const double> v) {
    return closed_form_lagrangian(GenPos(Eigen::Map<const GenPos>(v.data())), dq, p, p.legacy_potential);
  };
  const auto g = fd_gradient_richardson(fn, std::span<const double>(q.data(), 6), step);
  return GenPos(Eigen::Map<const GenPos>(g.data()));
}

}  // namespace

Vector8d residual_s(const GenPos& q, const GenVel& dq, const GenVel& ddq, const Vector2d& lambda,
                    const Params& params, const FDConfig& cfg) {
  const double step = cfg.second_order_step();
  auto q_at = [&](double t) { return GenPos(q + t * dq + 0.5 * t * t * ddq); };
  auto dq_at = [&](double t) { return GenVel(dq + t * ddq); };

  const Vector2d da = time_derivative(
      [&](double t) { return Vector2d(constraint_matrix(q_at(t), params.r) * dq_at(t)); }, step);
  const GenVel dp = time_derivative(
      [&](double t) { return velocity_gradient(q_at(t), dq_at(t), params, step); }, step);
  const GenPos grad_q = position_gradient(q, dq, params, step);

  Vector8d s;
  s.head<2>() = da;
  s.tail<6>() = dp - grad_q - constraint_matrix(q, params.r).transpose() * lambda;
  return s;
}

MassAndRhs fd_mass_and_rhs(const GenPos& q, const GenVel& dq, const Params& params, const FDConfig& cfg) {
  MassAndRhs out;
  const Vector8d s0 = residual_s(q, dq, GenVel::Zero(), Vector2d::Zero(), params, cfg);
  for (int j = 0; j < 8; ++j) {
    Vector2d lambda = Vector2d::Zero();
    GenVel ddq = GenVel::Zero();
    if (j < 2) {
      lambda[j] = 1.0;
    } else {
      ddq[j - 2] = 1.0;
    }
    out.M.col(j) = residual_s(q, dq, ddq, lambda, params, cfg) - s0;
  }
  out.b = -s0;
  return out;
}

FDPartials fd_lagrangian_partials(const LagrangianFn& L, const GenPos& q, const GenVel& dq, const FDConfig& cfg) {
  std::vector<double> z(12);
  for (int i = 0; i < 6; ++i) {
    z[i] = q[i];
    z[6 + i] = dq[i];
  }
  const ScalarFn fn = [&](std::span<const double> v) {
    return L(GenPos(Eigen::Map<const GenPos>(v.data())), GenVel(Eigen::Map<const GenVel>(v.data() + 6)));
  };
  const auto grad = fd_gradient(fn, z, cfg);
  const auto hess = fd_hessian(fn, z, cfg);

  FDPartials out;
  for (int i = 0; i < 6; ++i) {
    out.grad_q[i] = grad[i];
    out.grad_dq[i] = grad[6 + i];
    for (int j = 0; j < 6; ++j) {
      out.hess_dq_dq(i, j) = hess[(6 + i) * 12 + (6 + j)];
      out.hess_dq_q(i, j) = hess[(6 + i) * 12 + j];
    }
  }
  return out;
}

double relative_discrepancy(const Eigen::MatrixXd& a, const Eigen::MatrixXd& reference) {
  const double scale = std::max(reference.cwiseAbs().maxCoeff(), 1.0);
  return (a - reference).cwiseAbs().maxCoeff() / scale;
}

}  // namespace rodwheel::oracle
