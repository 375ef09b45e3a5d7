#pragma once

/**
 * @file quaternion.hpp
 * @brief Real quaternions q = x0 + x1 i + x2 j + x3 k.
 *
 * Units obey i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j. Multiplication is
 * not commutative; reals commute with everything. Components are stored in
 * the fixed order (x0, x1, x2, x3) and every serializer uses that order.
 */

#include <cmath>
#include <concepts>
#include <ostream>

#include "rqframes/errors.hpp"

namespace rqframes {

template <std::floating_point T>
struct basic_quaternion {
  T x0{0}, x1{0}, x2{0}, x3{0};

  constexpr basic_quaternion() = default;
  constexpr basic_quaternion(T real) : x0{real} {}  // NOLINT: reals embed implicitly
  constexpr basic_quaternion(T a, T b, T c, T d) : x0{a}, x1{b}, x2{c}, x3{d} {}

  static constexpr basic_quaternion i() { return {0, 1, 0, 0}; }
  static constexpr basic_quaternion j() { return {0, 0, 1, 0}; }
  static constexpr basic_quaternion k() { return {0, 0, 0, 1}; }

  [[nodiscard]] constexpr T real() const { return x0; }
  [[nodiscard]] constexpr bool is_real() const { return x1 == 0 && x2 == 0 && x3 == 0; }
  [[nodiscard]] bool is_finite() const {
    return std::isfinite(x0) && std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3);
  }

  /// Squared modulus x0^2 + x1^2 + x2^2 + x3^2.
  [[nodiscard]] constexpr T norm2() const { return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }

  constexpr basic_quaternion& operator+=(const basic_quaternion& o) {
    x0 += o.x0; x1 += o.x1; x2 += o.x2; x3 += o.x3;
    return *this;
  }
  constexpr basic_quaternion& operator-=(const basic_quaternion& o) {
    x0 -= o.x0; x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
    return *this;
  }
  constexpr basic_quaternion& operator*=(const basic_quaternion& o) { return *this = *this * o; }

  friend constexpr basic_quaternion operator+(basic_quaternion a, const basic_quaternion& b) { return a += b; }
  friend constexpr basic_quaternion operator-(basic_quaternion a, const basic_quaternion& b) { return a -= b; }
  friend constexpr basic_quaternion operator-(const basic_quaternion& a) { return {-a.x0, -a.x1, -a.x2, -a.x3}; }

  /// Hamilton product.
  friend constexpr basic_quaternion operator*(const basic_quaternion& p, const basic_quaternion& q) {
    return {p.x0 * q.x0 - p.x1 * q.x1 - p.x2 * q.x2 - p.x3 * q.x3,
            p.x0 * q.x1 + p.x1 * q.x0 + p.x2 * q.x3 - p.x3 * q.x2,
            p.x0 * q.x2 - p.x1 * q.x3 + p.x2 * q.x0 + p.x3 * q.x1,
            p.x0 * q.x3 + p.x1 * q.x2 - p.x2 * q.x1 + p.x3 * q.x0};
  }
  friend constexpr basic_quaternion operator*(const basic_quaternion& p, T s) { return {p.x0 * s, p.x1 * s, p.x2 * s, p.x3 * s}; }
  friend constexpr basic_quaternion operator*(T s, const basic_quaternion& p) { return p * s; }

  friend constexpr bool operator==(const basic_quaternion&, const basic_quaternion&) = default;

  friend std::ostream& operator<<(std::ostream& os, const basic_quaternion& q) {
    return os << '(' << q.x0 << ", " << q.x1 << ", " << q.x2 << ", " << q.x3 << ')';
  }
};

using quaternion = basic_quaternion<double>;

template <std::floating_point T>
constexpr basic_quaternion<T> mul(const basic_quaternion<T>& p, const basic_quaternion<T>& q) {
  return p * q;
}

template <std::floating_point T>
constexpr basic_quaternion<T> conj(const basic_quaternion<T>& q) {
  return {q.x0, -q.x1, -q.x2, -q.x3};
}

template <std::floating_point T>
T abs(const basic_quaternion<T>& q) {
  return std::sqrt(q.norm2());
}

inline constexpr double default_inverse_epsilon = 1e-300;

/// conj(q) / |q|^2. Throws division_by_zero when |q| < epsilon.
template <std::floating_point T>
basic_quaternion<T> inv(const basic_quaternion<T>& q, T epsilon = T(default_inverse_epsilon)) {
  // scaled modulus so that |q|^2 never underflows for tiny admissible q
  const T m = std::fmax(std::fmax(std::fabs(q.x0), std::fabs(q.x1)), std::fmax(std::fabs(q.x2), std::fabs(q.x3)));
  const T a = m == 0 ? T(0) : m * abs(q * (T(1) / m));
  if (!(a >= epsilon) || a == 0) throw division_by_zero("quaternion has no inverse");
  const T r = T(1) / a;
  return (conj(q) * r) * r;
}

/// Largest absolute component difference.
template <std::floating_point T>
T max_component_diff(const basic_quaternion<T>& a, const basic_quaternion<T>& b) {
  return std::fmax(std::fmax(std::fabs(a.x0 - b.x0), std::fabs(a.x1 - b.x1)),
                   std::fmax(std::fabs(a.x2 - b.x2), std::fabs(a.x3 - b.x3)));
}

}  // namespace rqframes
