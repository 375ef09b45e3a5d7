#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "rqframes/linalg.hpp"

namespace rqframes {

inline constexpr double singular_pivot_tolerance = 1e-12;

/**
 * Solves M X = B over H by Gaussian elimination with partial pivoting on
 * |pivot|. Rows are scaled on the left (row <- inv(pivot) row) and eliminated
 * with left factors, which keeps the unknowns' right-linear structure intact.
 *
 * Throws singular_matrix when the best available pivot falls below
 * 1e-12 * max|M_ab|.
 */
template <std::floating_point T>
basic_qmatrix<T> solve(basic_qmatrix<T> m, basic_qmatrix<T> b) {
  if (!m.is_square()) throw dimension_mismatch("solve needs a square matrix");
  if (b.rows() != m.rows()) throw dimension_mismatch("right-hand side has wrong row count");
  const std::size_t n = m.rows();
  const std::size_t rhs = b.cols();
  const T cutoff = T(singular_pivot_tolerance) * m.max_abs();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    T best_abs = abs(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const T a = abs(m(r, k));
      if (a > best_abs) {
        best = r;
        best_abs = a;
      }
    }
    if (!(best_abs > cutoff) || best_abs == 0) throw singular_matrix("pivot below tolerance in column " + std::to_string(k));
    if (best != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(best, c));
      for (std::size_t c = 0; c < rhs; ++c) std::swap(b(k, c), b(best, c));
    }

    const basic_quaternion<T> pinv = inv(m(k, k));
    for (std::size_t c = k; c < n; ++c) m(k, c) = pinv * m(k, c);
    for (std::size_t c = 0; c < rhs; ++c) b(k, c) = pinv * b(k, c);
    m(k, k) = basic_quaternion<T>(1);

    for (std::size_t r = 0; r < n; ++r) {
      if (r == k) continue;
      const basic_quaternion<T> f = m(r, k);
      if (f == basic_quaternion<T>{}) continue;
      for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
      for (std::size_t c = 0; c < rhs; ++c) b(r, c) -= f * b(k, c);
      m(r, k) = basic_quaternion<T>{};
    }
  }
  return b;
}

template <std::floating_point T>
basic_qvector<T> solve(const basic_qmatrix<T>& m, const basic_qvector<T>& b) {
  const basic_qvector<T> cols[] = {b};
  return solve(m, basic_qmatrix<T>::from_columns(cols, b.dim())).column(0);
}

template <std::floating_point T>
basic_qmatrix<T> inverse(const basic_qmatrix<T>& m) {
  return solve(m, basic_qmatrix<T>::identity(m.rows()));
}

}  // namespace rqframes
