#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

namespace rqframes {
namespace {

using testing::orthonormal_family;
using testing::random_frame;

qvector vec(std::initializer_list<quaternion> xs) { return qvector(std::vector<quaternion>(xs)); }

frame_family single_node(std::size_t d, std::vector<qvector> vs) {
  const std::size_t n = vs.size();
  return {d, n, quadrature_measure({{quaternion(0), 1.0}}), {std::move(vs)}};
}

// Bounds (1, 4) on H^2 with canonical dual {e1 / 2, e2}.
frame_family one_four_frame() { return single_node(2, {qvector::unit(2, 0) * 2.0, qvector::unit(2, 1)}); }

check_options exact_options() {
  check_options o;
  o.tolerance = 1e-9;
  return o;
}

TEST(Kappa, Examples) {
  const auto f = single_node(1, {vec({quaternion(1)})});
  const auto g = single_node(1, {vec({quaternion(0.5)})});
  EXPECT_EQ(kappa(f, f), 0.0);
  EXPECT_NEAR(kappa(f, g), 0.25, 1e-15);
  EXPECT_THROW(kappa(f, one_four_frame()), shape_mismatch);
}

TEST(Kappa, MatchesReversedOrderSum) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = random_frame(10 + s);
    const auto g = generate_perturbation(f, 0.3, perturbation_mode::free, s);
    double rev = 0;
    for (std::size_t k = f.node_count(); k-- > 0;)
      for (std::size_t i = f.rank(); i-- > 0;) rev += f.weight(k) * norm2(f.vector(k, i) - g.vector(k, i));
    EXPECT_NEAR(kappa(f, g), rev, 1e-12 * (1 + rev));
  }
}

TEST(Kappa, ScalesQuadratically) {
  const auto f = random_frame(30);
  const auto g = generate_perturbation(f, 0.2, perturbation_mode::free, 31);
  const double k1 = kappa(f, g);
  for (double t : {0.0, 0.1, 0.5, 1.7, 3.0}) {
    const auto gt = f.transformed([&](std::size_t k, std::size_t i, const qvector& v) {
      return v + (g.vector(k, i) - v) * t;
    });
    EXPECT_NEAR(kappa(f, gt), t * t * k1, 1e-10 * (1 + t * t * k1));
  }
}

TEST(KappaTheorem, ZeroPerturbationCollapses) {
  const auto f = random_frame(40);
  const auto r = check_kappa_theorem(f, f, exact_options());
  const auto b = frame_bounds(f);
  EXPECT_TRUE(r.hypotheses_hold);
  EXPECT_TRUE(r.contained);
  EXPECT_NEAR(r.predicted.lower, b.lower, 1e-15);
  EXPECT_NEAR(r.predicted.upper, b.upper, 1e-15);
  EXPECT_NEAR(r.measured.lower, b.lower, 1e-15);
}

TEST(KappaTheorem, ClosedFormExample) {
  // m = 1, M = 4; a perturbation of norm 0.5 on e2 gives kappa = 0.25.
  const auto f = one_four_frame();
  const auto g = single_node(2, {qvector::unit(2, 0) * 2.0, qvector::unit(2, 1) * 1.5});
  const auto r = check_kappa_theorem(f, g, exact_options());
  EXPECT_NEAR(r.conditions.at(0).value, 0.25, 1e-15);
  EXPECT_NEAR(r.predicted.lower, 0.25, 1e-14);
  EXPECT_NEAR(r.predicted.upper, 6.25, 1e-13);
  EXPECT_NEAR(r.measured.lower, 2.25, 1e-13);
  EXPECT_NEAR(r.measured.upper, 4, 1e-13);
  EXPECT_TRUE(r.contained);
  EXPECT_TRUE(r.passed());
}

TEST(KappaTheorem, HypothesisViolationMakesNoClaim) {
  const auto f = one_four_frame();
  const auto g = single_node(2, {qvector::unit(2, 0) * 2.0, qvector::unit(2, 1) * 3.0});
  const auto r = check_kappa_theorem(f, g, exact_options());
  EXPECT_GE(r.conditions.at(0).value, 1.0);
  EXPECT_FALSE(r.hypotheses_hold);
  EXPECT_FALSE(r.contained);
  EXPECT_TRUE(r.passed());
}

TEST(KappaTheorem, PredictedIntervalIsContinuousAtZero) {
  const auto f = random_frame(41);
  const auto b = frame_bounds(f);
  double previous = std::numeric_limits<double>::infinity();
  for (double target : {1e-6, 1e-8}) {
    const auto g = generate_perturbation(f, std::sqrt(target), perturbation_mode::kappa_admissible, 42);
    const auto r = check_kappa_theorem(f, g, exact_options());
    const double k = r.conditions.at(0).value;
    EXPECT_NEAR(k, target, 1e-12 * (1 + target));
    const double allowance = 2 * std::sqrt(k * b.upper) + k;
    const double dev = std::max(b.lower - r.predicted.lower, r.predicted.upper - b.upper);
    EXPECT_GE(b.lower - r.predicted.lower, 0);
    EXPECT_LE(dev, allowance * (1 + 1e-9));
    EXPECT_LT(dev, previous / 5);
    previous = dev;
    EXPECT_TRUE(r.contained);
  }
}

TEST(KappaTheorem, RandomAdmissibleTrialsAreContained) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto f = random_frame(50 + s);
    const auto g = generate_perturbation(f, 100, perturbation_mode::kappa_admissible, s);
    const auto r = check_kappa_theorem(f, g);
    EXPECT_TRUE(r.hypotheses_hold);
    EXPECT_TRUE(r.contained) << "trial " << s;
  }
}

TEST(SumTheorem, DoubledFamilyExceedsPredictedUpperBound) {
  // zeta = eta gives 2 eta with frame operator 4A; the stated bounds evaluate to (2m, 2M).
  const auto f = orthonormal_family(2);
  const auto r = check_sum_theorem(f, f, exact_options());
  EXPECT_TRUE(r.hypotheses_hold);
  EXPECT_NEAR(r.predicted.lower, 2, 1e-14);
  EXPECT_NEAR(r.predicted.upper, 2, 1e-14);
  EXPECT_NEAR(r.measured.lower, 4, 1e-13);
  EXPECT_NEAR(r.measured.upper, 4, 1e-13);
  EXPECT_FALSE(r.contained);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(r.certificates_hold());
}

TEST(SumTheorem, LowerBoundAndPositivityHoldOnRandomTrials) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto f = random_frame(100 + s);
    const auto g = generate_perturbation(f, 100, perturbation_mode::kappa_admissible, s);
    const auto r = check_sum_theorem(f, g);
    EXPECT_TRUE(r.hypotheses_hold);
    EXPECT_TRUE(r.certificates_hold());
    EXPECT_LE(r.predicted.lower, r.measured.lower + 1e-9 * frame_bounds(f).upper);
    const auto sb = frame_bounds(sum_family(f, g));
    EXPECT_NEAR(r.measured.upper, sb.upper, 1e-12 * sb.upper);
  }
}

TEST(Gamma, Examples) {
  const auto f = single_node(1, {vec({quaternion(2)})});
  const auto p = single_node(1, {vec({quaternion(1.5)})});
  EXPECT_EQ(gamma(f, f), 0.0);
  EXPECT_NEAR(gamma(f, p), 0.25, 1e-15);
  EXPECT_THROW(gamma(single_node(2, {qvector::unit(2, 0)}), single_node(2, {qvector::unit(2, 1)})), not_a_frame);
}

TEST(Gamma, MatchesPrecomputedDualNorms) {
  const auto f = random_frame(150);
  const auto p = generate_perturbation(f, 0.1, perturbation_mode::free, 151);
  const auto dual = canonical_dual(f);
  std::vector<double> dn;
  for (std::size_t k = 0; k < f.node_count(); ++k)
    for (std::size_t i = 0; i < f.rank(); ++i) dn.push_back(norm(dual.vector(k, i)));
  double expected = 0;
  for (std::size_t k = 0; k < f.node_count(); ++k)
    for (std::size_t i = 0; i < f.rank(); ++i)
      expected += f.weight(k) * norm(f.vector(k, i) - p.vector(k, i)) * dn[k * f.rank() + i];
  EXPECT_NEAR(gamma(f, p), expected, 1e-12 * expected);
}

TEST(DualWeightedTheorem, ClosedFormExample) {
  // m = 1, M = 4: moving 2 e1 by the unit vector e2 gives lambda = 1, gamma = 1 * |e1 / 2| = 0.5.
  const auto f = one_four_frame();
  const auto p = single_node(2, {qvector::unit(2, 0) * 2.0 + qvector::unit(2, 1), qvector::unit(2, 1)});
  const auto r = check_dual_weighted_theorem(f, p, exact_options());
  ASSERT_EQ(r.conditions.size(), 2u);
  EXPECT_NEAR(r.conditions[0].value, 1, 1e-14);
  EXPECT_NEAR(r.conditions[1].value, 0.5, 1e-14);
  EXPECT_NEAR(r.predicted.lower, 0.25, 1e-14);
  EXPECT_NEAR(r.predicted.upper, 9, 1e-13);
  EXPECT_NEAR(r.measured.lower, 3 - std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(r.measured.upper, 3 + std::sqrt(5.0), 1e-12);
  EXPECT_TRUE(r.contained);
}

TEST(DualWeightedTheorem, IdentityAndViolation) {
  const auto f = random_frame(160);
  const auto same = check_dual_weighted_theorem(f, f, exact_options());
  const auto b = frame_bounds(f);
  EXPECT_NEAR(same.predicted.lower, b.lower, 1e-12 * b.lower);
  EXPECT_NEAR(same.predicted.upper, b.upper, 1e-15);
  EXPECT_TRUE(same.contained);

  const auto far = generate_perturbation(f, 50, perturbation_mode::free, 161);
  const auto r = check_dual_weighted_theorem(f, far, exact_options());
  EXPECT_GE(r.conditions[1].value, 1);
  EXPECT_FALSE(r.hypotheses_hold);
  EXPECT_TRUE(r.passed());
}

TEST(DualWeightedTheorem, RandomAdmissibleTrialsAreContained) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto f = random_frame(200 + s);
    const auto p = generate_perturbation(f, 100, perturbation_mode::gamma_admissible, s);
    const auto r = check_dual_weighted_theorem(f, p);
    EXPECT_NEAR(r.conditions[1].value, 0.5, 1e-12);
    EXPECT_TRUE(r.contained) << "trial " << s;
  }
}

TEST(GapTheorem, IdentityPerturbation) {
  const auto f = random_frame(300);
  check_options opt = exact_options();
  opt.seed = 5;
  const auto r = check_gap_theorem(f, f, opt);
  const auto b = frame_bounds(f);
  EXPECT_NEAR(r.conditions.at(2).value, 0, 1e-7);
  EXPECT_NEAR(r.predicted.lower, b.lower, 1e-12 * b.lower);
  EXPECT_GE(r.measured.lower, b.lower * (1 - 1e-10));
  EXPECT_LE(r.measured.upper, b.upper * (1 + 1e-10));
  EXPECT_TRUE(r.certificates_hold());
  EXPECT_TRUE(r.contained);
}

TEST(GapTheorem, OrthogonalSpansAreRejected) {
  const auto f = single_node(2, {qvector::unit(2, 0)});
  const auto p = single_node(2, {qvector::unit(2, 1)});
  EXPECT_THROW(check_gap_theorem(f, p), gap_too_large);
}

TEST(GapTheorem, SamplingIsSeeded) {
  const auto f = random_frame(310);
  const auto p = generate_perturbation(f, 100, perturbation_mode::gamma_admissible, 311);
  check_options a = exact_options(), b = exact_options();
  a.seed = b.seed = 99;
  EXPECT_EQ(check_gap_theorem(f, p, a).measured.lower, check_gap_theorem(f, p, b).measured.lower);
}

TEST(GapTheorem, RandomAdmissibleTrialsAreContained) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto f = random_frame(320 + s);
    const auto p = generate_perturbation(f, 100, perturbation_mode::gamma_admissible, s);
    check_options opt;
    opt.seed = s;
    const auto r = check_gap_theorem(f, p, opt);
    EXPECT_LT(r.conditions.at(2).value, 0.3);
    EXPECT_TRUE(r.certificates_hold());
    EXPECT_TRUE(r.contained) << "trial " << s;
  }
}

TEST(RieszTheorem, BothLowerCandidatesAreReported) {
  const auto f = single_node(2, {qvector::unit(2, 0)});
  const auto x = single_node(2, {qvector::unit(2, 0) + qvector::unit(2, 1) * 0.5});
  const auto r = check_riesz_theorem(f, x, exact_options());
  ASSERT_TRUE(r.lower_candidates.has_value());
  EXPECT_NEAR(r.conditions.at(1).value, 0.5, 1e-14);
  EXPECT_NEAR(r.lower_candidates->statement, 0.75, 1e-14);
  EXPECT_NEAR(r.lower_candidates->proof, 0.25, 1e-14);
  EXPECT_NEAR(r.predicted.lower, 0.25, 1e-14);
  EXPECT_NEAR(r.predicted.upper, 2.25, 1e-14);
  EXPECT_NEAR(r.measured.lower, 1.25, 1e-13);
  EXPECT_NEAR(r.measured.upper, 1.25, 1e-13);
  EXPECT_TRUE(r.contained);
}

TEST(RieszTheorem, IdentityPerturbation) {
  const auto f = random_frame(400);
  const auto r = check_riesz_theorem(f, f, exact_options());
  const auto rb = riesz_bounds(f);
  EXPECT_NEAR(r.lower_candidates->statement, rb.lower, 1e-15);
  EXPECT_NEAR(r.lower_candidates->proof, rb.lower, 1e-15);
  EXPECT_EQ(r.measured.lower, rb.lower);
  EXPECT_TRUE(r.contained);
}

TEST(RieszTheorem, DegenerateReferenceIsRejected) {
  const qvector e1 = qvector::unit(2, 0), e2 = qvector::unit(2, 1);
  const frame_family f(2, 2, quadrature_measure({{quaternion(0), 1.0}, {quaternion(1), 1.0}}), {{e1, e2}, {e2, e1}});
  EXPECT_THROW(check_riesz_theorem(f, f), not_a_riesz_family);
}

TEST(RieszTheorem, SubspaceDualMatchesCanonicalDualForFrames) {
  const auto f = random_frame(410);
  const auto a = subspace_dual(f), b = canonical_dual(f);
  for (std::size_t k = 0; k < f.node_count(); ++k)
    for (std::size_t i = 0; i < f.rank(); ++i)
      EXPECT_LE(testing::max_vector_diff(a.vector(k, i), b.vector(k, i)), 1e-10);
}

TEST(RieszTheorem, RandomAdmissibleTrialsAreContained) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto f = random_frame(500 + s);
    const auto x = generate_perturbation(f, 100, perturbation_mode::gamma_admissible, s);
    const auto r = check_riesz_theorem(f, x);
    EXPECT_TRUE(r.hypotheses_hold);
    EXPECT_TRUE(r.contained) << "trial " << s;
  }
}

TEST(Dispatch, TheoremNames) {
  for (auto t : all_theorems) EXPECT_EQ(theorem_from_string(to_string(t)), t);
  EXPECT_EQ(to_string(theorem_id::kappa), "T_kappa");
  EXPECT_THROW(theorem_from_string("T_bogus"), invalid_config);
}

}  // namespace
}  // namespace rqframes
