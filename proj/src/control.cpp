#include "rodwheel/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rodwheel {

ControllerSpec ControllerSpec::none() { return {}; }

ControllerSpec ControllerSpec::case1() {
  ControllerSpec s{ControllerKind::kCase1, 20.0, 20.0, 0.0, 1.0, 2.0, std::nullopt};
  return s;
}

ControllerSpec ControllerSpec::case2() {
  ControllerSpec s{ControllerKind::kCase2, 5.0, 5.0, 20.0, 0.2, 10.0, std::nullopt};
  return s;
}

ControllerSpec ControllerSpec::custom(double k_p, double k_d, double k_theta, double a, double v_ref) {
  ControllerSpec s{ControllerKind::kCustom, k_p, k_d, k_theta, a, v_ref, std::nullopt};
  return s;
}

void ControllerSpec::validate() const {
  for (double v : {k_p, k_d, k_theta, a, v_ref}) {
    if (!std::isfinite(v)) throw std::invalid_argument("controller gains must be finite");
  }
  if (clamp && !(*clamp > 0.0)) throw std::invalid_argument("controller clamp must be positive");
}

std::string_view to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kNone: return "none";
    case ControllerKind::kCase1: return "case1";
    case ControllerKind::kCase2: return "case2";
    case ControllerKind::kCustom: return "custom";
  }
  return "unknown";
}

ControllerKind controller_kind_from_string(std::string_view name) {
  if (name == "none") return ControllerKind::kNone;
  if (name == "case1") return ControllerKind::kCase1;
  if (name == "case2") return ControllerKind::kCase2;
  if (name == "custom") return ControllerKind::kCustom;
  throw std::invalid_argument("unknown controller kind '" + std::string(name) + "'");
}

double control_case1(const State& x) {
  const double beta0 = std::tanh(2.0 - x.dphi());
  return 20.0 * (x.beta() - beta0) + 20.0 * x.dbeta();
}

double control_case2(const State& x) {
  const double beta0 = 0.2 * std::tanh(10.0 - x.dphi());
  return 5.0 * (x.beta() - beta0) + 5.0 * x.dbeta() + 20.0 * std::abs(x.theta());
}

double control_custom(const State& x, const ControllerSpec& spec) {
  const double beta0 = spec.a * std::tanh(spec.v_ref - x.dphi());
  return spec.k_p * (x.beta() - beta0) + spec.k_d * x.dbeta() + spec.k_theta * std::abs(x.theta());
}

double control(const State& x, const ControllerSpec& spec) {
  double u = 0.0;
  switch (spec.kind) {
    case ControllerKind::kNone: u = 0.0; break;
    case ControllerKind::kCase1: u = control_case1(x); break;
    case ControllerKind::kCase2: u = control_case2(x); break;
    case ControllerKind::kCustom: u = control_custom(x, spec); break;
  }
  if (spec.clamp) u = std::clamp(u, -*spec.clamp, *spec.clamp);
  return u;
}

}  // namespace rodwheel
