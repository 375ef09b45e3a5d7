#pragma once

/**
 * @file linalg.hpp
 * @brief Vectors and right-linear operators of the right quaternionic space H^d.
 *
 * Scalars act on the right of vectors (v q), matrices act on the left (M v),
 * so M(v q) = (M v) q. The inner product is conjugate-linear in the first
 * slot and linear in the second: <v q | w> = conj(q) <v|w>, <v | w q> = <v|w> q.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "rqframes/errors.hpp"
#include "rqframes/quaternion.hpp"

namespace rqframes {

template <std::floating_point T>
class basic_qvector {
 public:
  using scalar = basic_quaternion<T>;

  basic_qvector() = default;
  explicit basic_qvector(std::size_t dim) : entries_(dim) {}
  basic_qvector(std::initializer_list<scalar> init) : entries_(init) {}
  explicit basic_qvector(std::vector<scalar> entries) : entries_(std::move(entries)) {}

  /// Standard basis vector e_{index} (zero based).
  static basic_qvector unit(std::size_t dim, std::size_t index) {
    basic_qvector v(dim);
    v[index] = scalar(1);
    return v;
  }

  [[nodiscard]] std::size_t dim() const { return entries_.size(); }
  scalar& operator[](std::size_t a) { return entries_[a]; }
  const scalar& operator[](std::size_t a) const { return entries_[a]; }
  [[nodiscard]] std::span<const scalar> entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  basic_qvector& operator+=(const basic_qvector& o) {
    require_same_dim(o);
    for (std::size_t a = 0; a < dim(); ++a) entries_[a] += o.entries_[a];
    return *this;
  }
  basic_qvector& operator-=(const basic_qvector& o) {
    require_same_dim(o);
    for (std::size_t a = 0; a < dim(); ++a) entries_[a] -= o.entries_[a];
    return *this;
  }
  friend basic_qvector operator+(basic_qvector a, const basic_qvector& b) { return a += b; }
  friend basic_qvector operator-(basic_qvector a, const basic_qvector& b) { return a -= b; }

  /// Right scalar multiplication: entries become v_a q.
  friend basic_qvector operator*(basic_qvector v, const scalar& q) {
    for (auto& e : v.entries_) e = e * q;
    return v;
  }
  friend basic_qvector operator*(basic_qvector v, T s) {
    for (auto& e : v.entries_) e = e * s;
    return v;
  }

  friend bool operator==(const basic_qvector&, const basic_qvector&) = default;

  void require_same_dim(const basic_qvector& o) const {
    if (o.dim() != dim())
      throw dimension_mismatch("vector dimensions differ: " + std::to_string(dim()) + " vs " + std::to_string(o.dim()));
  }

 private:
  std::vector<scalar> entries_;
};

/// Dense row-major quaternion matrix.
template <std::floating_point T>
class basic_qmatrix {
 public:
  using scalar = basic_quaternion<T>;
  using vector = basic_qvector<T>;

  basic_qmatrix() = default;
  basic_qmatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  basic_qmatrix(std::size_t rows, std::size_t cols, std::vector<scalar> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) throw shape_mismatch("matrix entry count does not match rows*cols");
  }
  basic_qmatrix(std::initializer_list<std::initializer_list<scalar>> rows) : rows_(rows.size()) {
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != cols_) throw shape_mismatch("ragged matrix initializer");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  static basic_qmatrix identity(std::size_t n) {
    basic_qmatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a) m(a, a) = scalar(1);
    return m;
  }
  static basic_qmatrix diagonal(std::initializer_list<scalar> diag) {
    basic_qmatrix m(diag.size(), diag.size());
    std::size_t a = 0;
    for (const auto& q : diag) {
      m(a, a) = q;
      ++a;
    }
    return m;
  }
  /// Matrix whose columns are the given vectors.
  static basic_qmatrix from_columns(std::span<const vector> columns, std::size_t rows) {
    basic_qmatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].dim() != rows) throw dimension_mismatch("column has wrong dimension");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }
  scalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  [[nodiscard]] std::span<const scalar> entries() const { return entries_; }

  [[nodiscard]] vector column(std::size_t c) const {
    vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  /// max |entry|.
  [[nodiscard]] T max_abs() const {
    T m = 0;
    for (const auto& q : entries_) m = std::max(m, abs(q));
    return m;
  }

  basic_qmatrix& operator+=(const basic_qmatrix& o) {
    require_same_shape(o);
    for (std::size_t e = 0; e < entries_.size(); ++e) entries_[e] += o.entries_[e];
    return *this;
  }
  basic_qmatrix& operator-=(const basic_qmatrix& o) {
    require_same_shape(o);
    for (std::size_t e = 0; e < entries_.size(); ++e) entries_[e] -= o.entries_[e];
    return *this;
  }
  friend basic_qmatrix operator+(basic_qmatrix a, const basic_qmatrix& b) { return a += b; }
  friend basic_qmatrix operator-(basic_qmatrix a, const basic_qmatrix& b) { return a -= b; }
  friend basic_qmatrix operator*(basic_qmatrix m, T s) {
    for (auto& e : m.entries_) e = e * s;
    return m;
  }

  friend basic_qmatrix operator*(const basic_qmatrix& a, const basic_qmatrix& b) {
    if (a.cols_ != b.rows_) throw dimension_mismatch("matrix product shape mismatch");
    basic_qmatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t t = 0; t < a.cols_; ++t) {
        const scalar& art = a(r, t);
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += art * b(t, c);
      }
    return out;
  }

  friend vector operator*(const basic_qmatrix& m, const vector& v) {
    if (m.cols_ != v.dim()) throw dimension_mismatch("matrix-vector shape mismatch");
    vector out(m.rows_);
    for (std::size_t r = 0; r < m.rows_; ++r) {
      scalar acc;
      for (std::size_t c = 0; c < m.cols_; ++c) acc += m(r, c) * v[c];
      out[r] = acc;
    }
    return out;
  }

  friend bool operator==(const basic_qmatrix&, const basic_qmatrix&) = default;

  void require_same_shape(const basic_qmatrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw dimension_mismatch("matrix shapes differ");
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<scalar> entries_;
};

using qvector = basic_qvector<double>;
using qmatrix = basic_qmatrix<double>;

/// <phi|psi> = sum_a conj(phi_a) psi_a.
template <std::floating_point T>
basic_quaternion<T> inner(const basic_qvector<T>& phi, const basic_qvector<T>& psi) {
  phi.require_same_dim(psi);
  basic_quaternion<T> acc;
  for (std::size_t a = 0; a < phi.dim(); ++a) acc += conj(phi[a]) * psi[a];
  return acc;
}

template <std::floating_point T>
T norm2(const basic_qvector<T>& v) {
  T s = 0;
  for (const auto& q : v) s += q.norm2();
  return s;
}

template <std::floating_point T>
T norm(const basic_qvector<T>& v) {
  return std::sqrt(norm2(v));
}

/// |eta><zeta|: entries eta_a conj(zeta_b), so outer(eta, zeta) phi = eta <zeta|phi>.
template <std::floating_point T>
basic_qmatrix<T> outer(const basic_qvector<T>& eta, const basic_qvector<T>& zeta) {
  eta.require_same_dim(zeta);
  const std::size_t d = eta.dim();
  basic_qmatrix<T> m(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) m(a, b) = eta[a] * conj(zeta[b]);
  return m;
}

/// Accumulates weight * |eta><zeta| into out without forming the outer product.
template <std::floating_point T>
void add_outer(basic_qmatrix<T>& out, const basic_qvector<T>& eta, const basic_qvector<T>& zeta, T weight) {
  const std::size_t d = eta.dim();
  for (std::size_t a = 0; a < d; ++a) {
    const basic_quaternion<T> left = eta[a] * weight;
    for (std::size_t b = 0; b < d; ++b) out(a, b) += left * conj(zeta[b]);
  }
}

/// Conjugate transpose.
template <std::floating_point T>
basic_qmatrix<T> adjoint(const basic_qmatrix<T>& m) {
  basic_qmatrix<T> out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = conj(m(r, c));
  return out;
}

/// max_ab |M_ab - conj(M_ba)|, componentwise.
template <std::floating_point T>
T self_adjoint_defect(const basic_qmatrix<T>& m) {
  if (!m.is_square()) throw dimension_mismatch("self-adjointness needs a square matrix");
  T worst = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c) worst = std::max(worst, max_component_diff(m(r, c), conj(m(c, r))));
  return worst;
}

template <std::floating_point T>
T max_entry_diff(const basic_qmatrix<T>& a, const basic_qmatrix<T>& b) {
  a.require_same_shape(b);
  T worst = 0;
  for (std::size_t e = 0; e < a.entries().size(); ++e)
    worst = std::max(worst, max_component_diff(a.entries()[e], b.entries()[e]));
  return worst;
}

}  // namespace rqframes
