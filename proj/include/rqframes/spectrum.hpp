#pragma once

/**
 * @file spectrum.hpp
 * @brief Spectral computations through the complex embedding H^{r x c} -> C^{2r x 2c}.
 *
 * An entry q = a + b i + c j + d k becomes the block
 *
 *     [  a + b i   c + d i ]
 *     [ -c + d i   a - b i ]
 *
 * which is a *-homomorphism. A self-adjoint quaternionic matrix of size d maps
 * to a 2d x 2d Hermitian matrix whose eigenvalues are the quaternionic
 * (right) eigenvalues, each repeated twice.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "rqframes/linalg.hpp"
#include "rqframes/solve.hpp"

namespace rqframes {

template <std::floating_point T>
class basic_cmatrix {
 public:
  using value_type = std::complex<T>;

  basic_cmatrix() = default;
  basic_cmatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static basic_cmatrix identity(std::size_t n) {
    basic_cmatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a) m(a, a) = 1;
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend basic_cmatrix operator*(const basic_cmatrix& a, const basic_cmatrix& b) {
    if (a.cols_ != b.rows_) throw dimension_mismatch("complex matrix product shape mismatch");
    basic_cmatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t t = 0; t < a.cols_; ++t)
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += a(r, t) * b(t, c);
    return out;
  }

  [[nodiscard]] basic_cmatrix conjugate_transpose() const {
    basic_cmatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  [[nodiscard]] T frobenius() const {
    T s = 0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  friend T max_abs_diff(const basic_cmatrix& a, const basic_cmatrix& b) {
    T worst = 0;
    for (std::size_t e = 0; e < a.data_.size(); ++e) worst = std::max(worst, std::abs(a.data_[e] - b.data_[e]));
    return worst;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

using cmatrix = basic_cmatrix<double>;

template <std::floating_point T>
basic_cmatrix<T> embed(const basic_qmatrix<T>& m) {
  basic_cmatrix<T> out(2 * m.rows(), 2 * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& q = m(r, c);
      out(2 * r, 2 * c) = {q.x0, q.x1};
      out(2 * r, 2 * c + 1) = {q.x2, q.x3};
      out(2 * r + 1, 2 * c) = {-q.x2, q.x3};
      out(2 * r + 1, 2 * c + 1) = {q.x0, -q.x1};
    }
  return out;
}

struct jacobi_options {
  int max_sweeps = 100;
  double relative_tolerance = 1e-12;  // off-diagonal Frobenius norm vs ||M||
};

inline constexpr double self_adjoint_tolerance = 1e-10;

/**
 * Eigenvalues of a complex Hermitian matrix, ascending, by cyclic Jacobi.
 *
 * Pairs (p, q) are visited in row-major order of the strict upper triangle.
 * Each rotation first removes the phase of h_pq with a diagonal unitary and
 * then applies the real symmetric Jacobi rotation.
 */
template <std::floating_point T>
std::vector<T> hermitian_eigenvalues(basic_cmatrix<T> h, const jacobi_options& opts = {}) {
  const std::size_t n = h.rows();
  if (h.cols() != n) throw dimension_mismatch("eigenvalues need a square matrix");
  const T scale = h.frobenius();
  std::vector<T> eig(n);
  auto off_norm = [&] {
    T s = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) s += std::norm(h(p, q));
    return std::sqrt(s);
  };

  if (scale > 0) {
    const T target = T(opts.relative_tolerance) * scale;
    int sweep = 0;
    while (off_norm() >= target) {
      if (sweep++ >= opts.max_sweeps) throw no_convergence("Jacobi iteration exceeded sweep cap");
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
          const std::complex<T> hpq = h(p, q);
          const T r = std::abs(hpq);
          if (r == 0) continue;
          const std::complex<T> phase = hpq / r;  // e^{i phi}
          const T app = h(p, p).real();
          const T aqq = h(q, q).real();
          const T theta = (aqq - app) / (2 * r);
          const T t = (theta >= 0 ? T(1) : T(-1)) / (std::abs(theta) + std::sqrt(theta * theta + 1));
          const T c = 1 / std::sqrt(t * t + 1);
          const T s = t * c;
          // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
          const std::complex<T> jpp = c, jpq = s;
          const std::complex<T> jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
          for (std::size_t k = 0; k < n; ++k) {
            const std::complex<T> hkp = h(k, p), hkq = h(k, q);
            h(k, p) = hkp * jpp + hkq * jqp;
            h(k, q) = hkp * jpq + hkq * jqq;
          }
          for (std::size_t k = 0; k < n; ++k) {
            const std::complex<T> hpk = h(p, k), hqk = h(q, k);
            h(p, k) = std::conj(jpp) * hpk + std::conj(jqp) * hqk;
            h(q, k) = std::conj(jpq) * hpk + std::conj(jqq) * hqk;
          }
          h(p, q) = h(q, p) = 0;
          h(p, p) = h(p, p).real();
          h(q, q) = h(q, q).real();
        }
    }
  }
  for (std::size_t a = 0; a < n; ++a) eig[a] = h(a, a).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

/// Length-2d ascending spectrum of a self-adjoint quaternionic matrix.
template <std::floating_point T>
std::vector<T> hermitian_spectrum(const basic_qmatrix<T>& m, const jacobi_options& opts = {}) {
  if (!m.is_square()) throw dimension_mismatch("spectrum needs a square matrix");
  const T tol = T(self_adjoint_tolerance) * std::max(T(1), m.max_abs());
  if (self_adjoint_defect(m) > tol) throw not_self_adjoint("matrix is not self-adjoint within tolerance");
  return hermitian_eigenvalues(embed(m), opts);
}

/// Quaternionic eigenvalues: every other entry of the paired spectrum.
template <std::floating_point T>
std::vector<T> quaternionic_eigenvalues(const basic_qmatrix<T>& m, const jacobi_options& opts = {}) {
  const auto full = hermitian_spectrum(m, opts);
  std::vector<T> out;
  for (std::size_t t = 0; t + 1 < full.size(); t += 2) out.push_back((full[t] + full[t + 1]) / 2);
  return out;
}

/// Largest singular value, sqrt(max spectrum(M^dagger M)).
template <std::floating_point T>
T operator_norm(const basic_qmatrix<T>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const auto spec = hermitian_spectrum(adjoint(m) * m);
  return std::sqrt(std::max(T(0), spec.back()));
}

/// Smallest singular value over the column space dimension, sqrt(min spectrum(M^dagger M)).
template <std::floating_point T>
T min_singular_value(const basic_qmatrix<T>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const auto spec = hermitian_spectrum(adjoint(m) * m);
  return std::sqrt(std::max(T(0), spec.front()));
}

template <std::floating_point T>
struct basic_neumann_result {
  bool invertible = false;
  T norm = 0;
  std::optional<basic_qmatrix<T>> inverse;  // (I - M)^{-1} when invertible
  T certificate_residual = 0;               // max entry of (I - M)(I - M)^{-1} - I
};

using neumann_result = basic_neumann_result<double>;

inline constexpr double neumann_certificate_tolerance = 1e-9;

/**
 * Reports whether ||M|| < 1, in which case I - M is invertible. The inverse
 * is computed by elimination and certified against the identity; a failed
 * certificate is reported as not invertible.
 */
template <std::floating_point T>
basic_neumann_result<T> neumann_invertible(const basic_qmatrix<T>& m) {
  if (!m.is_square()) throw dimension_mismatch("neumann_invertible needs a square matrix");
  basic_neumann_result<T> res;
  res.norm = operator_norm(m);
  if (!(res.norm < 1)) return res;
  const auto id = basic_qmatrix<T>::identity(m.rows());
  const auto shifted = id - m;
  auto inv_shifted = inverse(shifted);
  res.certificate_residual = max_entry_diff(shifted * inv_shifted, id);
  if (res.certificate_residual > T(neumann_certificate_tolerance)) return res;
  res.invertible = true;
  res.inverse = std::move(inv_shifted);
  return res;
}

}  // namespace rqframes
