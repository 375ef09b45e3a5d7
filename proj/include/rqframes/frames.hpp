#pragma once

/**
 * @file frames.hpp
 * @brief Rank-n frame families over a finite positive quadrature measure.
 *
 * A family carries n vectors eta^i_k per node k of a measure with weights
 * w_k. Every integral over the measure is the weighted node sum
 * sum_k w_k f(q_k). The frame operator is A = sum_{i,k} w_k |eta^i_k><eta^i_k|
 * and the frame bounds are the extreme eigenvalues of A.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rqframes/linalg.hpp"
#include "rqframes/solve.hpp"
#include "rqframes/spectrum.hpp"
#include "rqframes/subspace.hpp"

namespace rqframes {

struct quadrature_node {
  quaternion label;  // metadata only
  double weight = 1;

  friend bool operator==(const quadrature_node&, const quadrature_node&) = default;
};

class quadrature_measure {
 public:
  quadrature_measure() = default;
  explicit quadrature_measure(std::vector<quadrature_node> nodes) : nodes_(std::move(nodes)) {
    for (const auto& n : nodes_) {
      if (!(n.weight > 0) || !std::isfinite(n.weight)) throw invalid_family("quadrature weights must be positive and finite");
      if (!n.label.is_finite()) throw non_finite("quadrature label is not finite");
    }
  }

  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] const quadrature_node& operator[](std::size_t k) const { return nodes_[k]; }
  [[nodiscard]] double weight(std::size_t k) const { return nodes_[k].weight; }
  [[nodiscard]] const std::vector<quadrature_node>& nodes() const { return nodes_; }
  [[nodiscard]] double total_weight() const {
    double s = 0;
    for (const auto& n : nodes_) s += n.weight;
    return s;
  }

  friend bool operator==(const quadrature_measure&, const quadrature_measure&) = default;

 private:
  std::vector<quadrature_node> nodes_;
};

inline constexpr double independence_tolerance = 1e-10;
inline constexpr double frame_predicate_tolerance = 1e-10;

/// Gram matrix G(i, j) = <v_i | v_j>.
inline qmatrix gram_matrix(std::span<const qvector> vectors) {
  qmatrix g(vectors.size(), vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < vectors.size(); ++j) g(i, j) = inner(vectors[i], vectors[j]);
  return g;
}

/// Smallest eigenvalue exceeds 1e-10 times the largest (and the largest is positive).
inline bool gram_is_independent(std::span<const qvector> vectors) {
  if (vectors.empty()) return true;
  const auto spec = hermitian_spectrum(gram_matrix(vectors));
  return spec.back() > 0 && spec.front() > independence_tolerance * spec.back();
}

/**
 * Immutable frame family. Construction validates the shape (every node has
 * exactly `rank` vectors of dimension `dim`), finiteness, and linear
 * independence of the vectors at each node.
 */
class frame_family {
 public:
  using node_vectors = std::vector<qvector>;

  frame_family(std::size_t dim, std::size_t rank, quadrature_measure measure, std::vector<node_vectors> vectors)
      : dim_(dim), rank_(rank), measure_(std::move(measure)), vectors_(std::move(vectors)) {
    if (dim_ == 0 || rank_ == 0) throw invalid_family("dim and rank must be positive");
    if (vectors_.size() != measure_.size()) throw shape_mismatch("one vector list per quadrature node required");
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
      if (vectors_[k].size() != rank_)
        throw shape_mismatch("node " + std::to_string(k) + " does not carry exactly rank vectors");
      for (const auto& v : vectors_[k]) {
        if (v.dim() != dim_) throw dimension_mismatch("node " + std::to_string(k) + " has a vector of wrong dimension");
        for (const auto& q : v)
          if (!q.is_finite()) throw non_finite("frame vector has a non-finite component");
      }
      if (!gram_is_independent(vectors_[k]))
        throw invalid_family("vectors at node " + std::to_string(k) + " are linearly dependent");
    }
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t rank() const { return rank_; }
  [[nodiscard]] std::size_t node_count() const { return vectors_.size(); }
  [[nodiscard]] const quadrature_measure& measure() const { return measure_; }
  [[nodiscard]] double weight(std::size_t k) const { return measure_.weight(k); }
  [[nodiscard]] const qvector& vector(std::size_t k, std::size_t i) const { return vectors_[k][i]; }
  [[nodiscard]] const std::vector<node_vectors>& vectors() const { return vectors_; }

  /// All vectors, node-major.
  [[nodiscard]] std::vector<qvector> flattened() const {
    std::vector<qvector> out;
    out.reserve(node_count() * rank_);
    for (const auto& node : vectors_) out.insert(out.end(), node.begin(), node.end());
    return out;
  }

  /// Same measure and rank with every vector mapped through f.
  template <class F>
  [[nodiscard]] frame_family transformed(F&& f) const {
    std::vector<node_vectors> out(node_count());
    for (std::size_t k = 0; k < node_count(); ++k)
      for (std::size_t i = 0; i < rank_; ++i) out[k].push_back(f(k, i, vectors_[k][i]));
    return {dim_, rank_, measure_, std::move(out)};
  }

  [[nodiscard]] bool same_shape(const frame_family& o) const {
    return dim_ == o.dim_ && rank_ == o.rank_ && measure_ == o.measure_;
  }

  friend bool operator==(const frame_family&, const frame_family&) = default;

 private:
  std::size_t dim_;
  std::size_t rank_;
  quadrature_measure measure_;
  std::vector<node_vectors> vectors_;
};

inline void require_same_shape(const frame_family& a, const frame_family& b) {
  if (!a.same_shape(b)) throw shape_mismatch("families differ in dimension, rank or measure");
}

struct frame_bounds_t {
  double lower = 0;
  double upper = 0;

  /// lower > 1e-10 * upper: A is invertible.
  [[nodiscard]] bool is_frame() const { return upper > 0 && lower > frame_predicate_tolerance * upper; }
};

/// A = sum_{i,k} w_k |eta^i_k><eta^i_k|.
inline qmatrix frame_operator(const frame_family& f) {
  qmatrix a(f.dim(), f.dim());
  for (std::size_t k = 0; k < f.node_count(); ++k)
    for (std::size_t i = 0; i < f.rank(); ++i) add_outer(a, f.vector(k, i), f.vector(k, i), f.weight(k));
  return a;
}

/// sum_{i,k} w_k |eta^i_k><zeta^i_k| for two families on the same measure.
inline qmatrix mixed_operator(const frame_family& eta, const frame_family& zeta) {
  require_same_shape(eta, zeta);
  qmatrix a(eta.dim(), eta.dim());
  for (std::size_t k = 0; k < eta.node_count(); ++k)
    for (std::size_t i = 0; i < eta.rank(); ++i) add_outer(a, eta.vector(k, i), zeta.vector(k, i), eta.weight(k));
  return a;
}

inline frame_bounds_t spectrum_bounds(const qmatrix& a) {
  const auto spec = hermitian_spectrum(a);
  return {std::max(0.0, spec.front()), std::max(0.0, spec.back())};
}

inline frame_bounds_t frame_bounds(const frame_family& f) { return spectrum_bounds(frame_operator(f)); }

/// Middle term of the frame inequality, sum_{i,k} w_k |<eta^i_k|phi>|^2.
inline double frame_sum(const frame_family& f, const qvector& phi) {
  double s = 0;
  for (std::size_t k = 0; k < f.node_count(); ++k)
    for (std::size_t i = 0; i < f.rank(); ++i) s += f.weight(k) * inner(f.vector(k, i), phi).norm2();
  return s;
}

/// Analysis coefficients c[k][i] = <eta^i_k | phi>, unweighted.
class coefficient_table {
 public:
  coefficient_table() = default;
  coefficient_table(std::size_t nodes, std::size_t rank) : rank_(rank), data_(nodes * rank) {}

  [[nodiscard]] std::size_t node_count() const { return rank_ == 0 ? 0 : data_.size() / rank_; }
  [[nodiscard]] std::size_t rank() const { return rank_; }
  quaternion& operator()(std::size_t k, std::size_t i) { return data_[k * rank_ + i]; }
  const quaternion& operator()(std::size_t k, std::size_t i) const { return data_[k * rank_ + i]; }

 private:
  std::size_t rank_ = 0;
  std::vector<quaternion> data_;
};

inline coefficient_table analysis(const frame_family& f, const qvector& phi) {
  if (phi.dim() != f.dim()) throw dimension_mismatch("analysis: vector dimension differs from family");
  coefficient_table c(f.node_count(), f.rank());
  for (std::size_t k = 0; k < f.node_count(); ++k)
    for (std::size_t i = 0; i < f.rank(); ++i) c(k, i) = inner(f.vector(k, i), phi);
  return c;
}

/// sum_{i,k} w_k eta^i_k c[k][i].
inline qvector synthesis(const frame_family& f, const coefficient_table& c) {
  if (c.node_count() != f.node_count() || c.rank() != f.rank())
    throw shape_mismatch("synthesis: coefficient table shape differs from family");
  qvector out(f.dim());
  for (std::size_t k = 0; k < f.node_count(); ++k)
    for (std::size_t i = 0; i < f.rank(); ++i) out += f.vector(k, i) * (c(k, i) * f.weight(k));
  return out;
}

/// ||c||_w^2 = sum_{i,k} w_k |c[k][i]|^2.
inline double weighted_norm2(const frame_family& f, const coefficient_table& c) {
  double s = 0;
  for (std::size_t k = 0; k < f.node_count(); ++k)
    for (std::size_t i = 0; i < f.rank(); ++i) s += f.weight(k) * c(k, i).norm2();
  return s;
}

inline void require_frame(const frame_bounds_t& b) {
  if (!b.is_frame()) throw not_a_frame("family is not a frame: lower bound " + std::to_string(b.lower));
}

/// Every vector replaced by A^{-1} eta. Throws not_a_frame if A is not invertible.
inline frame_family canonical_dual(const frame_family& f) {
  const qmatrix a = frame_operator(f);
  require_frame(spectrum_bounds(a));
  const auto flat = f.flattened();
  const qmatrix dual_cols = solve(a, qmatrix::from_columns(flat, f.dim()));
  return f.transformed([&](std::size_t k, std::size_t i, const qvector&) { return dual_cols.column(k * f.rank() + i); });
}

/// sum_{i,k} w_k eta^i_k <A^{-1} eta^i_k | phi>.
inline qvector reconstruct(const frame_family& f, const qvector& phi) {
  const frame_family dual = canonical_dual(f);
  return synthesis(f, analysis(dual, phi));
}

/// Second decomposition form sum_{i,k} w_k A^{-1} eta^i_k <eta^i_k | phi>.
inline qvector reconstruct_dual_form(const frame_family& f, const qvector& phi) {
  const frame_family dual = canonical_dual(f);
  return synthesis(dual, analysis(f, phi));
}

/// Optimal Bessel constant D = M(A).
inline double bessel_bound(const frame_family& f) { return frame_bounds(f).upper; }

inline coefficient_table random_coefficients(const frame_family& f, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  coefficient_table c(f.node_count(), f.rank());
  for (std::size_t k = 0; k < f.node_count(); ++k)
    for (std::size_t i = 0; i < f.rank(); ++i) c(k, i) = {n01(rng), n01(rng), n01(rng), n01(rng)};
  return c;
}

/**
 * Largest observed ||synthesis(c)|| / ||c||_w over random tables. The
 * synthesis operator is bounded by sqrt(D), D the Bessel constant.
 */
inline double max_synthesis_ratio(const frame_family& f, std::mt19937_64& rng, std::size_t samples) {
  double worst = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto c = random_coefficients(f, rng);
    const double wn = std::sqrt(weighted_norm2(f, c));
    if (wn > 0) worst = std::max(worst, norm(synthesis(f, c)) / wn);
  }
  return worst;
}

/// v_i = sum_k w_k eta^i_k.
inline std::vector<qvector> integrated_vectors(const frame_family& f) {
  std::vector<qvector> v(f.rank(), qvector(f.dim()));
  for (std::size_t k = 0; k < f.node_count(); ++k)
    for (std::size_t i = 0; i < f.rank(); ++i) v[i] += f.vector(k, i) * f.weight(k);
  return v;
}

struct riesz_bounds_t {
  double lower = 0;
  double upper = 0;
};

/// Extreme eigenvalues of the Gram matrix of the integrated vectors.
inline riesz_bounds_t riesz_bounds(const frame_family& f) {
  const auto spec = hermitian_spectrum(gram_matrix(integrated_vectors(f)));
  return {std::max(0.0, spec.front()), std::max(0.0, spec.back())};
}

/// || sum_i v_i c_i ||^2 for coefficients indexed by i only.
inline double riesz_synthesis_norm2(const frame_family& f, std::span<const quaternion> c) {
  if (c.size() != f.rank()) throw shape_mismatch("riesz coefficients must have one entry per index");
  const auto v = integrated_vectors(f);
  qvector out(f.dim());
  for (std::size_t i = 0; i < f.rank(); ++i) out += v[i] * c[i];
  return norm2(out);
}

}  // namespace rqframes
