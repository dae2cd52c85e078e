#pragma once

#include <array>

#include "rodwheel/ad2.hpp"
#include "rodwheel/types.hpp"

namespace rodwheel {

namespace detail {

template <class T>
using Vec3 = std::array<T, 3>;
template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

template <class T>
Mat3<T> matmul(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T acc = a[i][0] * b[0][j];
      acc += a[i][1] * b[1][j];
      acc += a[i][2] * b[2][j];
      out[i][j] = acc;
    }
  return out;
}

template <class T>
Mat3<T> add(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = a[i][j] + b[i][j];
  return out;
}

// Elementary rotations and their derivatives with respect to the angle.
// The derivative matrices are scaled by `rate`, giving the time derivative
// of the rotation when `rate` is the angle's time derivative.

template <class T>
Mat3<T> rot_x(const T& c, const T& s) {
  return {{{T(1.0), T(0.0), T(0.0)}, {T(0.0), c, -s}, {T(0.0), s, c}}};
}
template <class T>
Mat3<T> rot_x_rate(const T& c, const T& s, const T& rate) {
  return {{{T(0.0), T(0.0), T(0.0)}, {T(0.0), -s * rate, -c * rate}, {T(0.0), c * rate, -s * rate}}};
}

template <class T>
Mat3<T> rot_y(const T& c, const T& s) {
  return {{{c, T(0.0), s}, {T(0.0), T(1.0), T(0.0)}, {-s, T(0.0), c}}};
}
template <class T>
Mat3<T> rot_y_rate(const T& c, const T& s, const T& rate) {
  return {{{-s * rate, T(0.0), c * rate}, {T(0.0), T(0.0), T(0.0)}, {-c * rate, T(0.0), -s * rate}}};
}

template <class T>
Mat3<T> rot_z(const T& c, const T& s) {
  return {{{c, -s, T(0.0)}, {s, c, T(0.0)}, {T(0.0), T(0.0), T(1.0)}}};
}
template <class T>
Mat3<T> rot_z_rate(const T& c, const T& s, const T& rate) {
  return {{{-s * rate, -c * rate, T(0.0)}, {c * rate, -s * rate, T(0.0)}, {T(0.0), T(0.0), T(0.0)}}};
}

/// R and dR/dt for the product Rz(psi) * Ry(theta) * Rx(spin).
template <class T>
struct RotationAndRate {
  Mat3<T> R;
  Mat3<T> dR;
};

template <class T>
RotationAndRate<T> euler_rotation_and_rate(const T& spin, const T& theta, const T& psi,
                                           const T& dspin, const T& dtheta, const T& dpsi) {
  const T cx = cos(spin), sx = sin(spin);
  const T cy = cos(theta), sy = sin(theta);
  const T cz = cos(psi), sz = sin(psi);
  const Mat3<T> rx = rot_x(cx, sx);
  const Mat3<T> ry = rot_y(cy, sy);
  const Mat3<T> rz = rot_z(cz, sz);
  const Mat3<T> ryx = matmul(ry, rx);
  const Mat3<T> rzy = matmul(rz, ry);

  RotationAndRate<T> out;
  out.R = matmul(rz, ryx);
  out.dR = add(add(matmul(rot_z_rate(cz, sz, dpsi), ryx),
                   matmul(matmul(rz, rot_y_rate(cy, sy, dtheta)), rx)),
               matmul(rzy, rot_x_rate(cx, sx, dspin)));
  return out;
}

template <class T>
Mat3<T> euler_rotation(const T& spin, const T& theta, const T& psi) {
  return matmul(rot_z(cos(psi), sin(psi)), matmul(rot_y(cos(theta), sin(theta)), rot_x(cos(spin), sin(spin))));
}

/// unskew(R^T dR): body-frame angular velocity.
template <class T>
Vec3<T> body_rate_from(const Mat3<T>& R, const Mat3<T>& dR) {
  // Only the three off-diagonal entries of W = R^T dR are needed.
  auto w = [&](int i, int j) {
    T acc = R[0][i] * dR[0][j];
    acc += R[1][i] * dR[1][j];
    acc += R[2][i] * dR[2][j];
    return acc;
  };
  return {-w(1, 2), w(0, 2), -w(0, 1)};
}

}  // namespace detail

/// Rz(psi) * Ry(theta) * Rx(phi).
RotationMatrix euler_rotation(const EulerAngles& angles);

/// Body-frame angular velocity for Euler angles moving at `rates` = (dphi, dtheta, dpsi).
Vector3d body_angular_velocity(const EulerAngles& angles, const Vector3d& rates);

/// Wheel center (c1, c2, r cos theta).
Vector3d wheel_center(const GenPos& q, const Params& params);

/// Rod tip: wheel center + Rz(psi) Ry(theta) Rx(beta) (0, 0, ell).
Vector3d rod_tip(const GenPos& q, const Params& params);

}  // namespace rodwheel
