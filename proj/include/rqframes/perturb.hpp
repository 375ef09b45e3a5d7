#pragma once

/**
 * @file perturb.hpp
 * @brief Perturbation quantities and theorem checkers.
 *
 * Each checker evaluates a perturbation theorem on a concrete pair of
 * families: it computes the hypothesis quantities, the predicted frame (or
 * Riesz) bounds, and the measured bounds of the perturbed family, and
 * records whether the measured interval lies inside the predicted one.
 *
 * Containment uses an absolute slack of `tolerance * M`, with M the upper
 * bound of the reference family.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rqframes/frames.hpp"

namespace rqframes {

enum class theorem_id { kappa, sum, dual_weighted, gap, riesz };

inline constexpr theorem_id all_theorems[] = {theorem_id::kappa, theorem_id::sum, theorem_id::dual_weighted,
                                              theorem_id::gap, theorem_id::riesz};

inline std::string_view to_string(theorem_id t) {
  switch (t) {
    case theorem_id::kappa: return "T_kappa";
    case theorem_id::sum: return "T_sum";
    case theorem_id::dual_weighted: return "T_dual_weighted";
    case theorem_id::gap: return "T_gap";
    case theorem_id::riesz: return "T_riesz";
  }
  return "?";
}

inline theorem_id theorem_from_string(std::string_view s) {
  for (auto t : all_theorems)
    if (to_string(t) == s) return t;
  throw invalid_config("unknown theorem id: " + std::string(s));
}

inline constexpr double default_tolerance = 1e-9;

/// Containment tolerance, overridable through RQFRAMES_TOL.
inline double containment_tolerance() {
  if (const char* env = std::getenv("RQFRAMES_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && std::isfinite(v) && v >= 0) return v;
    throw invalid_config("RQFRAMES_TOL is not a nonnegative number: " + std::string(env));
  }
  return default_tolerance;
}

struct condition {
  std::string name;
  double value = 0;
  double threshold = 0;
  bool holds = false;
};

struct bounds {
  double lower = 0;
  double upper = 0;
};

/// Both readings of the Riesz lower bound.
struct riesz_lower_candidates {
  double statement = 0;  // m (1 - gamma^2)
  double proof = 0;      // m (1 - gamma)^2
};

struct theorem_report {
  theorem_id theorem = theorem_id::kappa;
  std::vector<condition> conditions;    // hypotheses
  std::vector<condition> certificates;  // side claims verified alongside the bounds
  bounds predicted;
  bounds measured;
  bool hypotheses_hold = false;
  bool contained = false;
  std::optional<riesz_lower_candidates> lower_candidates;
  std::uint64_t trial_seed = 0;
  std::optional<std::string> error;

  [[nodiscard]] bool certificates_hold() const {
    return std::all_of(certificates.begin(), certificates.end(), [](const condition& c) { return c.holds; });
  }
  /// A report fails only when its hypotheses held and a claim did not.
  [[nodiscard]] bool passed() const {
    if (error) return false;
    return !hypotheses_hold || (contained && certificates_hold());
  }
};

struct check_options {
  double tolerance = containment_tolerance();
  std::uint64_t seed = 0;        // sampling seed (gap theorem)
  std::size_t samples = 1000;    // random unit vectors of K (gap theorem)
};

namespace detail {

inline condition less_than(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, value < threshold};
}

inline void finish(theorem_report& r, double slack) {
  r.hypotheses_hold = std::all_of(r.conditions.begin(), r.conditions.end(), [](const condition& c) { return c.holds; });
  r.contained = r.hypotheses_hold && r.predicted.lower <= r.measured.lower + slack &&
                r.measured.upper <= r.predicted.upper + slack;
}

inline double sq(double x) { return x * x; }

}  // namespace detail

/// sum_{i,k} w_k ||eta^i_k - zeta^i_k||^2.
inline double kappa(const frame_family& f, const frame_family& g) {
  require_same_shape(f, g);
  double s = 0;
  for (std::size_t k = 0; k < f.node_count(); ++k)
    for (std::size_t i = 0; i < f.rank(); ++i) s += f.weight(k) * norm2(f.vector(k, i) - g.vector(k, i));
  return s;
}

/// Same quantity as kappa, named after its role in the dual-weighted theorems.
inline double lambda(const frame_family& f, const frame_family& p) { return kappa(f, p); }

/// sum_{i,k} w_k ||eta^i_k - psi^i_k|| ||weights^i_k||.
inline double weighted_distance(const frame_family& f, const frame_family& p, const frame_family& weights) {
  require_same_shape(f, p);
  double s = 0;
  for (std::size_t k = 0; k < f.node_count(); ++k)
    for (std::size_t i = 0; i < f.rank(); ++i)
      s += f.weight(k) * norm(f.vector(k, i) - p.vector(k, i)) * norm(weights.vector(k, i));
  return s;
}

/// sum_{i,k} w_k ||eta^i_k - psi^i_k|| ||dual^i_k|| with the canonical dual of f.
inline double gamma(const frame_family& f, const frame_family& p) {
  require_same_shape(f, p);
  return weighted_distance(f, p, canonical_dual(f));
}

/// Frame bounds of a family restricted to a subspace, from the compression B_K^dagger A B_K.
inline bounds compressed_bounds(const frame_family& f, const subspace& k) {
  if (k.is_zero()) return {};
  const qmatrix b = k.basis_matrix();
  const auto fb = spectrum_bounds(adjoint(b) * frame_operator(f) * b);
  return {fb.lower, fb.upper};
}

/// Rayleigh sampling of the frame sum over random unit vectors of K.
inline bounds sampled_bounds_on(const frame_family& f, const subspace& k, std::mt19937_64& rng, std::size_t samples) {
  if (k.is_zero() || samples == 0) return {};
  std::normal_distribution<double> n01;
  bounds b{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t s = 0; s < samples; ++s) {
    qvector phi(k.ambient_dim);
    for (const auto& basis : k.basis) phi += basis * quaternion{n01(rng), n01(rng), n01(rng), n01(rng)};
    const double n = norm(phi);
    if (n == 0) continue;
    const double v = frame_sum(f, phi * (1 / n));
    b.lower = std::min(b.lower, v);
    b.upper = std::max(b.upper, v);
  }
  return b;
}

/**
 * Perturbation of a frame with kappa < m(A): the perturbed family g is a
 * frame with bounds m (1 - sqrt(kappa/m))^2 and M (1 + sqrt(kappa/M))^2.
 */
inline theorem_report check_kappa_theorem(const frame_family& f, const frame_family& g, const check_options& opt = {}) {
  require_same_shape(f, g);
  const auto fb = frame_bounds(f);
  require_frame(fb);
  const double m = fb.lower, big_m = fb.upper;
  const double k = kappa(f, g);

  theorem_report r;
  r.theorem = theorem_id::kappa;
  r.trial_seed = opt.seed;
  r.conditions.push_back(detail::less_than("kappa", k, m));
  r.predicted = {m * detail::sq(1 - std::sqrt(k / m)), big_m * detail::sq(1 + std::sqrt(k / big_m))};
  const auto gb = frame_bounds(g);
  r.measured = {gb.lower, gb.upper};
  detail::finish(r, opt.tolerance * big_m);
  return r;
}

/// Family with vectors eta^i_k + zeta^i_k.
inline frame_family sum_family(const frame_family& f, const frame_family& g) {
  require_same_shape(f, g);
  return f.transformed([&](std::size_t k, std::size_t i, const qvector& v) { return v + g.vector(k, i); });
}

/**
 * Sum family eta + zeta for zeta satisfying kappa < m(A). Predicted bounds
 * m [1 + (1 - sqrt(kappa/m))^2] and M [1 + (1 + sqrt(kappa/M))^2]. The sum
 * family's frame operator is certified self-adjoint and positive.
 */
inline theorem_report check_sum_theorem(const frame_family& f, const frame_family& g, const check_options& opt = {}) {
  require_same_shape(f, g);
  const auto fb = frame_bounds(f);
  require_frame(fb);
  const double m = fb.lower, big_m = fb.upper;
  const double k = kappa(f, g);

  theorem_report r;
  r.theorem = theorem_id::sum;
  r.trial_seed = opt.seed;
  r.conditions.push_back(detail::less_than("kappa", k, m));
  r.predicted = {m * (1 + detail::sq(1 - std::sqrt(k / m))), big_m * (1 + detail::sq(1 + std::sqrt(k / big_m)))};

  const qmatrix a_sum = frame_operator(sum_family(f, g));
  const double scale = std::max(1.0, a_sum.max_abs());
  const double sa_defect = self_adjoint_defect(a_sum);
  r.certificates.push_back({"sum_operator_self_adjoint", sa_defect, 1e-10 * scale, sa_defect <= 1e-10 * scale});
  const auto spec = hermitian_spectrum(a_sum);
  r.certificates.push_back({"sum_operator_min_eigenvalue", spec.front(), -1e-10 * scale, spec.front() >= -1e-10 * scale});
  r.measured = {std::max(0.0, spec.front()), std::max(0.0, spec.back())};
  detail::finish(r, opt.tolerance * big_m);
  return r;
}

/**
 * Perturbation measured against the canonical dual (bounds C = 1/M, D = 1/m).
 * With lambda finite and gamma < 1, p is a frame with bounds (1 - gamma)^2 / D
 * and M (1 + sqrt(lambda/M))^2.
 */
inline theorem_report check_dual_weighted_theorem(const frame_family& f, const frame_family& p,
                                                  const check_options& opt = {}) {
  require_same_shape(f, p);
  const auto fb = frame_bounds(f);
  require_frame(fb);
  const double big_m = fb.upper;
  const double d = 1 / fb.lower;
  const double lam = lambda(f, p);
  const double gam = gamma(f, p);

  theorem_report r;
  r.theorem = theorem_id::dual_weighted;
  r.trial_seed = opt.seed;
  r.conditions.push_back(detail::less_than("lambda", lam, std::numeric_limits<double>::infinity()));
  r.conditions.push_back(detail::less_than("gamma", gam, 1));
  r.predicted = {detail::sq(1 - gam) / d, big_m * detail::sq(1 + std::sqrt(lam / big_m))};
  const auto pb = frame_bounds(p);
  r.measured = {pb.lower, pb.upper};
  detail::finish(r, opt.tolerance * big_m);
  return r;
}

inline constexpr double gap_limit_margin = 1e-12;
inline constexpr double isomorphism_tolerance = 1e-10;

/**
 * Gap variant: K = span of p, L = span of f, delta(K, L) < 1. Predicts bounds
 * (1 - gamma)^2 / D and M (1 + sqrt(lambda/M))^2 / (1 - delta)^2 for p as a
 * frame of K, measured by Rayleigh sampling of unit vectors of K. Also
 * certifies that P_L restricted to K is an isomorphism onto L.
 */
inline theorem_report check_gap_theorem(const frame_family& f, const frame_family& p, const check_options& opt = {}) {
  require_same_shape(f, p);
  const subspace k_space = orthonormalize(p.flattened());
  const subspace l_space = orthonormalize(f.flattened());
  const double delta = gap(k_space, l_space);
  if (delta >= 1 - gap_limit_margin) throw gap_too_large("gap delta(K, L) = " + std::to_string(delta) + " is not below 1");
  const auto fb = frame_bounds(f);
  require_frame(fb);

  const double big_m = fb.upper;
  const double d = 1 / fb.lower;
  const double lam = lambda(f, p);
  const double gam = gamma(f, p);

  theorem_report r;
  r.theorem = theorem_id::gap;
  r.trial_seed = opt.seed;
  r.conditions.push_back(detail::less_than("lambda", lam, std::numeric_limits<double>::infinity()));
  r.conditions.push_back(detail::less_than("gamma", gam, 1));
  r.conditions.push_back(detail::less_than("delta", delta, 1));
  r.predicted = {detail::sq(1 - gam) / d, big_m * detail::sq(1 + std::sqrt(lam / big_m)) / detail::sq(1 - delta)};

  const double sigma_min = min_singular_value(l_space.projector() * k_space.basis_matrix());
  r.certificates.push_back({"projection_min_singular_value", sigma_min, isomorphism_tolerance,
                            sigma_min > isomorphism_tolerance});
  r.certificates.push_back({"projection_onto", static_cast<double>(k_space.dim()), static_cast<double>(l_space.dim()),
                            k_space.dim() == l_space.dim()});

  std::mt19937_64 rng(opt.seed);
  r.measured = sampled_bounds_on(p, k_space, rng, opt.samples);
  detail::finish(r, opt.tolerance * big_m);
  return r;
}

/**
 * S^{-1} eta for every vector, with S the frame operator of f acting on
 * L = span of all vectors of f. On L^perp the operator is extended by the
 * identity, so the solve is well posed even when L is a proper subspace.
 */
inline frame_family subspace_dual(const frame_family& f) {
  const subspace l_space = orthonormalize(f.flattened());
  const qmatrix s_ext = frame_operator(f) + qmatrix::identity(f.dim()) - l_space.projector();
  const auto flat = f.flattened();
  const qmatrix cols = solve(s_ext, qmatrix::from_columns(flat, f.dim()));
  return f.transformed([&](std::size_t k, std::size_t i, const qvector&) { return cols.column(k * f.rank() + i); });
}

/**
 * Riesz perturbation. With m, M the Riesz bounds of f and
 * gamma = sum w ||eta - xi|| ||S^{-1} eta|| < 1, x is a Riesz family with
 * upper bound M (1 + sqrt(lambda/M))^2. The lower bound is reported in both
 * forms m (1 - gamma^2) and m (1 - gamma)^2; containment uses the smaller.
 */
inline theorem_report check_riesz_theorem(const frame_family& f, const frame_family& x, const check_options& opt = {}) {
  require_same_shape(f, x);
  const auto rb = riesz_bounds(f);
  if (!(rb.upper > 0 && rb.lower > frame_predicate_tolerance * rb.upper))
    throw not_a_riesz_family("reference family has no positive lower Riesz bound");
  const double m = rb.lower, big_m = rb.upper;
  const double lam = lambda(f, x);
  const double gam = weighted_distance(f, x, subspace_dual(f));

  theorem_report r;
  r.theorem = theorem_id::riesz;
  r.trial_seed = opt.seed;
  r.conditions.push_back(detail::less_than("lambda", lam, std::numeric_limits<double>::infinity()));
  r.conditions.push_back(detail::less_than("gamma", gam, 1));
  r.lower_candidates = riesz_lower_candidates{m * (1 - gam * gam), m * detail::sq(1 - gam)};
  r.predicted = {std::min(r.lower_candidates->statement, r.lower_candidates->proof),
                 big_m * detail::sq(1 + std::sqrt(lam / big_m))};
  const auto xb = riesz_bounds(x);
  r.measured = {xb.lower, xb.upper};
  detail::finish(r, opt.tolerance * big_m);
  return r;
}

inline theorem_report check_theorem(theorem_id t, const frame_family& f, const frame_family& g,
                                    const check_options& opt = {}) {
  switch (t) {
    case theorem_id::kappa: return check_kappa_theorem(f, g, opt);
    case theorem_id::sum: return check_sum_theorem(f, g, opt);
    case theorem_id::dual_weighted: return check_dual_weighted_theorem(f, g, opt);
    case theorem_id::gap: return check_gap_theorem(f, g, opt);
    case theorem_id::riesz: return check_riesz_theorem(f, g, opt);
  }
  throw invalid_config("unknown theorem");
}

}  // namespace rqframes
