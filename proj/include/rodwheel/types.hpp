#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace rodwheel {

using Vector2d = Eigen::Vector2d;
using Vector3d = Eigen::Vector3d;
using Vector6d = Eigen::Matrix<double, 6, 1>;
using Vector8d = Eigen::Matrix<double, 8, 1>;
using Vector10d = Eigen::Matrix<double, 10, 1>;
using Matrix3d = Eigen::Matrix3d;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix8d = Eigen::Matrix<double, 8, 8>;
using Matrix26d = Eigen::Matrix<double, 2, 6>;

/// Generalized coordinates, ordered (c1, c2, phi, theta, psi, beta).
using GenPos = Vector6d;
/// Generalized velocities, same ordering as GenPos.
using GenVel = Vector6d;
using RotationMatrix = Matrix3d;

/// Index of each generalized coordinate in GenPos / GenVel.
enum Coord : int { kC1 = 0, kC2 = 1, kPhi = 2, kTheta = 3, kPsi = 4, kBeta = 5 };

/// Physical constants of the rodwheel.
struct Params {
  double m = 5.0;     // disk mass [kg]
  double g = 9.81;    // gravity [m/s^2]
  double r = 1.0;     // disk radius [m]
  double mu = 1.0;    // rod point mass [kg]
  double ell = 2.0;   // rod length [m]
  // Reproduce the rod potential without the gravity factor (mu * s3).
  bool legacy_potential = false;

  /// Throws std::invalid_argument unless every constant is strictly positive.
  void validate() const;
};

struct EulerAngles {
  double phi = 0.0;    // spin
  double theta = 0.0;  // stand (lean)
  double psi = 0.0;    // heading
};

/// The 10-dimensional state (c1, c2, phi, theta, psi, beta, dphi, dtheta, dpsi, dbeta).
/// The center velocities are not stored; they follow from the rolling constraints.
struct State {
  Vector10d x = Vector10d::Zero();

  State() = default;
  explicit State(const Vector10d& v) : x(v) {}
  State(double c1, double c2, double phi, double theta, double psi, double beta,
        double dphi, double dtheta, double dpsi, double dbeta) {
    x << c1, c2, phi, theta, psi, beta, dphi, dtheta, dpsi, dbeta;
  }

  double c1() const { return x[0]; }
  double c2() const { return x[1]; }
  double phi() const { return x[2]; }
  double theta() const { return x[3]; }
  double psi() const { return x[4]; }
  double beta() const { return x[5]; }
  double dphi() const { return x[6]; }
  double dtheta() const { return x[7]; }
  double dpsi() const { return x[8]; }
  double dbeta() const { return x[9]; }

  GenPos q() const { return x.head<6>(); }
  Eigen::Vector4d rates() const { return x.tail<4>(); }

  bool operator==(const State& o) const { return x == o.x; }
};

/// Raised when the augmented mass matrix cannot be factored reliably,
/// which happens as the wheel approaches lying flat (|theta| -> pi/2).
class SingularMass : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rodwheel
