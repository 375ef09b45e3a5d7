#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "rqframes/linalg.hpp"
#include "rqframes/spectrum.hpp"

namespace rqframes {

/// Right span of an orthonormal basis inside H^ambient_dim.
template <std::floating_point T>
struct basic_subspace {
  std::size_t ambient_dim = 0;
  std::vector<basic_qvector<T>> basis;

  [[nodiscard]] std::size_t dim() const { return basis.size(); }
  [[nodiscard]] bool is_zero() const { return basis.empty(); }

  /// d x k matrix with the basis as columns.
  [[nodiscard]] basic_qmatrix<T> basis_matrix() const {
    return basic_qmatrix<T>::from_columns(basis, ambient_dim);
  }

  /// Orthogonal projector sum_j |b_j><b_j|.
  [[nodiscard]] basic_qmatrix<T> projector() const {
    basic_qmatrix<T> p(ambient_dim, ambient_dim);
    for (const auto& b : basis) add_outer(p, b, b, T(1));
    return p;
  }

  [[nodiscard]] basic_qvector<T> project(const basic_qvector<T>& v) const {
    basic_qvector<T> out(ambient_dim);
    for (const auto& b : basis) out += b * inner(b, v);
    return out;
  }
};

using subspace = basic_subspace<double>;

inline constexpr double rank_tolerance = 1e-10;

/**
 * Modified Gram-Schmidt with right coefficients, v <- v - b <b|v>. Each
 * candidate gets a second orthogonalization pass; candidates whose residual
 * drops below 1e-10 * (largest input norm) lie in the current span and are
 * discarded.
 */
template <std::floating_point T>
basic_subspace<T> orthonormalize(std::span<const basic_qvector<T>> vectors, std::size_t ambient_dim) {
  basic_subspace<T> out{ambient_dim, {}};
  T max_norm = 0;
  for (const auto& v : vectors) {
    if (v.dim() != ambient_dim) throw dimension_mismatch("orthonormalize: vectors must share a dimension");
    max_norm = std::max(max_norm, norm(v));
  }
  const T cutoff = T(rank_tolerance) * max_norm;
  for (const auto& v0 : vectors) {
    if (out.basis.size() == ambient_dim) break;
    basic_qvector<T> v = v0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : out.basis) v -= b * inner(b, v);
    const T r = norm(v);
    if (!(r > cutoff) || r == 0) continue;
    out.basis.push_back(v * (T(1) / r));
  }
  return out;
}

template <std::floating_point T>
basic_subspace<T> orthonormalize(std::span<const basic_qvector<T>> vectors) {
  if (vectors.empty()) throw dimension_mismatch("orthonormalize: empty input needs an explicit ambient dimension");
  return orthonormalize(vectors, vectors.front().dim());
}

template <std::floating_point T>
basic_subspace<T> orthonormalize(const std::vector<basic_qvector<T>>& vectors) {
  return orthonormalize(std::span<const basic_qvector<T>>(vectors));
}

/**
 * Directional gap delta(K, L) = sup_{phi in K, |phi| = 1} dist(phi, L),
 * evaluated as ||(I - P_L) B_K||. Zero when K = {0}.
 */
template <std::floating_point T>
T gap(const basic_subspace<T>& k, const basic_subspace<T>& l) {
  if (k.ambient_dim != l.ambient_dim) throw ambient_mismatch("gap: subspaces live in different spaces");
  if (k.is_zero()) return 0;
  const auto residual = (basic_qmatrix<T>::identity(k.ambient_dim) - l.projector()) * k.basis_matrix();
  return std::min(T(1), operator_norm(residual));
}

}  // namespace rqframes
