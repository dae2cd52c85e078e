#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace rodwheel {

/// Hyper-dual scalar: a value, two directional first derivatives and their
/// mixed second derivative.
///
/// Seeding input i along direction 1 and input j along direction 2, then
/// evaluating a function f with ordinary arithmetic, yields
///   v   = f,   d1 = df/dx_i,   d2 = df/dx_j,   d12 = d2f/dx_i dx_j
/// with no truncation error. Seeding the same input along both directions
/// gives the pure second derivative.
struct AD2 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d12 = 0.0;

  constexpr AD2() = default;
  constexpr AD2(double value) : v(value) {}  // NOLINT: implicit constant lift
  constexpr AD2(double value, double e1, double e2, double e12)
      : v(value), d1(e1), d2(e2), d12(e12) {}

  static constexpr AD2 constant(double value) { return AD2{value}; }
  static constexpr AD2 seed1(double value) { return {value, 1.0, 0.0, 0.0}; }
  static constexpr AD2 seed2(double value) { return {value, 0.0, 1.0, 0.0}; }
  static constexpr AD2 seed_both(double value) { return {value, 1.0, 1.0, 0.0}; }

  constexpr AD2& operator+=(const AD2& b) {
    v += b.v;
    d1 += b.d1;
    d2 += b.d2;
    d12 += b.d12;
    return *this;
  }
  constexpr AD2& operator-=(const AD2& b) {
    v -= b.v;
    d1 -= b.d1;
    d2 -= b.d2;
    d12 -= b.d12;
    return *this;
  }
  constexpr AD2& operator*=(const AD2& b) {
    *this = AD2{v * b.v, d1 * b.v + v * b.d1, d2 * b.v + v * b.d2,
                d12 * b.v + d1 * b.d2 + d2 * b.d1 + v * b.d12};
    return *this;
  }
};

constexpr AD2 operator-(const AD2& a) { return {-a.v, -a.d1, -a.d2, -a.d12}; }
constexpr AD2 operator+(const AD2& a) { return a; }

constexpr AD2 operator+(AD2 a, const AD2& b) { return a += b; }
constexpr AD2 operator-(AD2 a, const AD2& b) { return a -= b; }
constexpr AD2 operator*(AD2 a, const AD2& b) { return a *= b; }

constexpr AD2 operator+(AD2 a, double b) { a.v += b; return a; }
constexpr AD2 operator+(double a, AD2 b) { b.v += a; return b; }
constexpr AD2 operator-(AD2 a, double b) { a.v -= b; return a; }
constexpr AD2 operator-(double a, const AD2& b) { return {a - b.v, -b.d1, -b.d2, -b.d12}; }
constexpr AD2 operator*(const AD2& a, double b) { return {a.v * b, a.d1 * b, a.d2 * b, a.d12 * b}; }
constexpr AD2 operator*(double a, const AD2& b) { return b * a; }

/// Reciprocal. Throws std::domain_error when the value part is zero.
inline AD2 reciprocal(const AD2& b) {
  if (b.v == 0.0) throw std::domain_error("AD2: division by a zero-valued scalar");
  const double inv = 1.0 / b.v;
  const double inv2 = inv * inv;
  // g(x) = 1/x: g' = -1/x^2, g'' = 2/x^3
  return {inv, -inv2 * b.d1, -inv2 * b.d2, -inv2 * b.d12 + 2.0 * inv2 * inv * b.d1 * b.d2};
}

inline AD2 operator/(const AD2& a, const AD2& b) { return a * reciprocal(b); }
inline AD2 operator/(const AD2& a, double b) {
  if (b == 0.0) throw std::domain_error("AD2: division by zero");
  return a * (1.0 / b);
}
inline AD2 operator/(double a, const AD2& b) { return a * reciprocal(b); }

inline AD2 sin(const AD2& a) {
  const double s = std::sin(a.v);
  const double c = std::cos(a.v);
  return {s, c * a.d1, c * a.d2, c * a.d12 - s * a.d1 * a.d2};
}

inline AD2 cos(const AD2& a) {
  const double s = std::sin(a.v);
  const double c = std::cos(a.v);
  return {c, -s * a.d1, -s * a.d2, -s * a.d12 - c * a.d1 * a.d2};
}

inline std::ostream& operator<<(std::ostream& os, const AD2& a) {
  return os << "AD2(" << a.v << ", " << a.d1 << ", " << a.d2 << ", " << a.d12 << ")";
}

// Lets templated kinematics call sin/cos unqualified for both double and AD2.
using std::cos;
using std::sin;

}  // namespace rodwheel
