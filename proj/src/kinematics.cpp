#include "rodwheel/kinematics.hpp"

#include <cmath>
#include <sstream>

namespace rodwheel {

void Params::validate() const {
  auto check = [](double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      std::ostringstream os;
      os << "parameter '" << name << "' must be strictly positive and finite, got " << value;
      throw std::invalid_argument(os.str());
    }
  };
  check(m, "m");
  check(g, "g");
  check(r, "r");
  check(mu, "mu");
  check(ell, "ell");
}

namespace {

Matrix3d to_eigen(const detail::Mat3<double>& a) {
  Matrix3d out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = a[i][j];
  return out;
}

}  // namespace

RotationMatrix euler_rotation(const EulerAngles& angles) {
  return to_eigen(detail::euler_rotation(angles.phi, angles.theta, angles.psi));
}

Vector3d body_angular_velocity(const EulerAngles& angles, const Vector3d& rates) {
  const auto rr = detail::euler_rotation_and_rate(angles.phi, angles.theta, angles.psi,
                                                  rates[0], rates[1], rates[2]);
  const auto w = detail::body_rate_from(rr.R, rr.dR);
  return {w[0], w[1], w[2]};
}

Vector3d wheel_center(const GenPos& q, const Params& params) {
  return {q[kC1], q[kC2], params.r * std::cos(q[kTheta])};
}

Vector3d rod_tip(const GenPos& q, const Params& params) {
  const RotationMatrix R = euler_rotation({q[kBeta], q[kTheta], q[kPsi]});
  return wheel_center(q, params) + params.ell * R.col(2);
}

}  // namespace rodwheel
