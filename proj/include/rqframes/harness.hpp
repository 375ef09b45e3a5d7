#pragma once

/**
 * @file harness.hpp
 * @brief Seeded random instances and the theorem suite runner.
 *
 * Everything a trial draws comes from a generator seeded with
 * seed ^ splitmix64(trial), so results do not depend on how trials are
 * scheduled across threads.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "rqframes/frames.hpp"
#include "rqframes/perturb.hpp"

namespace rqframes {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct experiment_config {
  std::size_t dim = 4;
  std::size_t rank = 2;
  std::size_t node_count = 8;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  double perturbation_scale = 100;  // large scales saturate the admissible caps
  std::vector<theorem_id> theorem_set{std::begin(all_theorems), std::end(all_theorems)};

  void validate() const {
    if (dim < 2 || dim > 16) throw invalid_config("dim must lie in [2, 16]");
    if (rank < 1 || rank > 4) throw invalid_config("rank must lie in [1, 4]");
    if (rank > dim) throw invalid_config("rank must not exceed dim");
    if (node_count < 1 || node_count > 16) throw invalid_config("node_count must lie in [1, 16]");
    if (trials < 1) throw invalid_config("trials must be at least 1");
    if (!(perturbation_scale >= 0) || !std::isfinite(perturbation_scale))
      throw invalid_config("perturbation_scale must be a nonnegative finite number");
    if (theorem_set.empty()) throw invalid_config("theorem_set must not be empty");
    for (std::size_t a = 0; a < theorem_set.size(); ++a)
      for (std::size_t b = a + 1; b < theorem_set.size(); ++b)
        if (theorem_set[a] == theorem_set[b]) throw invalid_config("theorem_set lists a theorem twice");
  }

  friend bool operator==(const experiment_config&, const experiment_config&) = default;
};

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return seed ^ splitmix64(trial); }

inline constexpr int node_retry_cap = 100;
inline constexpr int family_retry_cap = 20;

namespace detail {

inline quaternion normal_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  const double a = n01(rng), b = n01(rng), c = n01(rng), d = n01(rng);
  return {a, b, c, d};
}

inline qvector normal_vector(std::size_t dim, std::mt19937_64& rng) {
  qvector v(dim);
  for (std::size_t a = 0; a < dim; ++a) v[a] = normal_quaternion(rng);
  return v;
}

inline qvector unit_direction(std::size_t dim, std::mt19937_64& rng) {
  for (;;) {
    qvector v = normal_vector(dim, rng);
    const double n = norm(v);
    if (n > 0) return v * (1 / n);
  }
}

}  // namespace detail

/// Random family from a trial seed; see generate_frame for the distribution.
inline frame_family generate_frame_from_seed(std::size_t dim, std::size_t rank, std::size_t node_count,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight_dist(0.5, 1.5);
  for (int attempt = 0; attempt < family_retry_cap; ++attempt) {
    std::vector<quadrature_node> nodes;
    std::vector<frame_family::node_vectors> vectors;
    for (std::size_t k = 0; k < node_count; ++k) {
      quadrature_node node{detail::normal_quaternion(rng), weight_dist(rng)};
      bool ok = false;
      frame_family::node_vectors vs;
      for (int retry = 0; retry < node_retry_cap && !ok; ++retry) {
        vs.clear();
        for (std::size_t i = 0; i < rank; ++i) vs.push_back(detail::normal_vector(dim, rng));
        ok = gram_is_independent(vs);
      }
      if (!ok) throw generation_exhausted("could not draw independent vectors for a node");
      nodes.push_back(node);
      vectors.push_back(std::move(vs));
    }
    frame_family f(dim, rank, quadrature_measure(std::move(nodes)), std::move(vectors));
    if (frame_bounds(f).is_frame()) return f;
  }
  throw generation_exhausted("could not draw a family satisfying the frame predicate");
}

/**
 * Labels have standard-normal components, weights are uniform on [0.5, 1.5]
 * and vector components are standard normal. Nodes with dependent vectors
 * are redrawn (at most 100 times), and whole families failing the frame
 * predicate are redrawn (at most 20 times).
 */
inline frame_family generate_frame(const experiment_config& cfg, std::uint64_t trial) {
  cfg.validate();
  return generate_frame_from_seed(cfg.dim, cfg.rank, cfg.node_count, trial_seed(cfg.seed, trial));
}

enum class perturbation_mode { kappa_admissible, gamma_admissible, free };

inline std::string_view to_string(perturbation_mode m) {
  switch (m) {
    case perturbation_mode::kappa_admissible: return "kappa_admissible";
    case perturbation_mode::gamma_admissible: return "gamma_admissible";
    case perturbation_mode::free: return "free";
  }
  return "?";
}

inline perturbation_mode perturbation_mode_from_string(std::string_view s) {
  for (auto m : {perturbation_mode::kappa_admissible, perturbation_mode::gamma_admissible, perturbation_mode::free})
    if (to_string(m) == s) return m;
  throw invalid_config("unknown perturbation mode: " + std::string(s));
}

/**
 * zeta^i_k = eta^i_k + s u^i_k with unit random directions u. For `free`
 * s = t. Otherwise s is chosen in closed form: kappa_admissible makes
 * kappa = min(t^2, m(A)/2) and gamma_admissible makes gamma = min(t, 1/2).
 */
inline frame_family generate_perturbation(const frame_family& f, double t, perturbation_mode mode, std::uint64_t seed) {
  if (!(t >= 0) || !std::isfinite(t)) throw invalid_config("perturbation scale must be nonnegative and finite");
  std::mt19937_64 rng(seed);
  std::vector<qvector> dirs;
  dirs.reserve(f.node_count() * f.rank());
  for (std::size_t e = 0; e < f.node_count() * f.rank(); ++e) dirs.push_back(detail::unit_direction(f.dim(), rng));

  double s = t;
  if (mode == perturbation_mode::kappa_admissible) {
    // kappa(s) = s^2 * rank * total weight
    const double target = std::min(t * t, 0.5 * frame_bounds(f).lower);
    s = std::sqrt(target / (static_cast<double>(f.rank()) * f.measure().total_weight()));
  } else if (mode == perturbation_mode::gamma_admissible) {
    // gamma(s) = s * sum_{i,k} w_k ||dual^i_k||
    const frame_family dual = canonical_dual(f);
    double unit_gamma = 0;
    for (std::size_t k = 0; k < f.node_count(); ++k)
      for (std::size_t i = 0; i < f.rank(); ++i) unit_gamma += f.weight(k) * norm(dual.vector(k, i));
    s = std::min(t, 0.5) / unit_gamma;
  }
  if (s == 0) return f;
  return f.transformed(
      [&](std::size_t k, std::size_t i, const qvector& v) { return v + dirs[k * f.rank() + i] * s; });
}

inline perturbation_mode mode_for(theorem_id t) {
  switch (t) {
    case theorem_id::kappa:
    case theorem_id::sum: return perturbation_mode::kappa_admissible;
    default: return perturbation_mode::gamma_admissible;
  }
}

struct theorem_tally {
  std::size_t total = 0;
  std::size_t hypotheses_held = 0;
  std::size_t contained = 0;
  std::size_t failed = 0;
};

struct suite_report {
  experiment_config config;
  std::vector<std::size_t> trial_index;  // parallel to reports
  std::vector<theorem_report> reports;
  std::map<theorem_id, theorem_tally> tallies;
  double wall_time_seconds = 0;

  [[nodiscard]] bool all_passed() const {
    return std::all_of(reports.begin(), reports.end(), [](const theorem_report& r) { return r.passed(); });
  }
};

/// Runs one trial: a frame and one admissible perturbation per selected theorem.
inline std::vector<theorem_report> run_trial(const experiment_config& cfg, std::size_t trial, double tolerance) {
  const std::uint64_t tseed = trial_seed(cfg.seed, trial);
  std::vector<theorem_report> out;
  std::optional<frame_family> f;
  try {
    f = generate_frame(cfg, trial);
  } catch (const error& e) {
    for (auto t : cfg.theorem_set) {
      theorem_report r;
      r.theorem = t;
      r.trial_seed = tseed;
      r.error = e.what();
      out.push_back(std::move(r));
    }
    return out;
  }
  for (auto t : cfg.theorem_set) {
    const std::uint64_t pseed = splitmix64(tseed ^ (static_cast<std::uint64_t>(t) + 1));
    try {
      const frame_family g = generate_perturbation(*f, cfg.perturbation_scale, mode_for(t), pseed);
      check_options opt{tolerance, tseed, 1000};
      out.push_back(check_theorem(t, *f, g, opt));
    } catch (const error& e) {
      theorem_report r;
      r.theorem = t;
      r.trial_seed = tseed;
      r.error = e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

/**
 * Runs every trial, in parallel when threads > 1. The report lists trials in
 * index order and each trial's theorems in configuration order.
 */
inline suite_report run_suite(const experiment_config& cfg, unsigned threads = std::thread::hardware_concurrency(),
                              double tolerance = containment_tolerance()) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::vector<theorem_report>> per_trial(cfg.trials);
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(cfg.trials, 64)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < cfg.trials; t += threads) per_trial[t] = run_trial(cfg, t, tolerance);
      });
  }
  suite_report rep;
  rep.config = cfg;
  for (auto t : cfg.theorem_set) rep.tallies[t];
  for (std::size_t t = 0; t < cfg.trials; ++t)
    for (auto& r : per_trial[t]) {
      auto& tally = rep.tallies[r.theorem];
      ++tally.total;
      if (r.hypotheses_hold) ++tally.hypotheses_held;
      if (r.contained) ++tally.contained;
      if (!r.passed()) ++tally.failed;
      rep.trial_index.push_back(t);
      rep.reports.push_back(std::move(r));
    }
  rep.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace rqframes
