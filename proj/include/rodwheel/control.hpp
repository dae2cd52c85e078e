#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rodwheel/types.hpp"

namespace rodwheel {

enum class ControllerKind { kNone, kCase1, kCase2, kCustom };

/// Feedback law u = k_p (beta - beta0) + k_d beta' + k_theta |theta|,
/// with rod reference beta0 = a tanh(v_ref - phi').
struct ControllerSpec {
  ControllerKind kind = ControllerKind::kNone;
  double k_p = 0.0;
  double k_d = 0.0;
  double k_theta = 0.0;
  double a = 0.0;
  double v_ref = 0.0;
  // Optional symmetric torque limit. Unset means no saturation.
  std::optional<double> clamp;

  static ControllerSpec none();
  /// Speed tracking in the plane: gains (20, 20, 0), a = 1, v_ref = 2.
  static ControllerSpec case1();
  /// Speed tracking with lean feedback: gains (5, 5, 20), a = 0.2, v_ref = 10.
  static ControllerSpec case2();
  static ControllerSpec custom(double k_p, double k_d, double k_theta, double a, double v_ref);

  /// Throws std::invalid_argument on non-finite gains or a non-positive clamp.
  void validate() const;
};

std::string_view to_string(ControllerKind kind);
/// Throws std::invalid_argument for unknown names.
ControllerKind controller_kind_from_string(std::string_view name);

double control_case1(const State& x);
double control_case2(const State& x);
double control_custom(const State& x, const ControllerSpec& spec);

/// Dispatch on spec.kind and apply the optional clamp.
double control(const State& x, const ControllerSpec& spec);

}  // namespace rodwheel
