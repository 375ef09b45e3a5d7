#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "test_support.hpp"

namespace rqframes {
namespace {

using testing::max_vector_diff;
using testing::orthonormal_family;
using testing::random_frame;
using testing::random_quaternion;
using testing::random_unit_vector;
using testing::random_vector;

qvector vec(std::initializer_list<quaternion> xs) { return qvector(std::vector<quaternion>(xs)); }

frame_family single_node(std::size_t d, std::vector<qvector> vs, double w = 1.0) {
  const std::size_t n = vs.size();
  return {d, n, quadrature_measure({{quaternion(0), w}}), {std::move(vs)}};
}

TEST(FrameOperator, OrthonormalFamilyGivesIdentity) {
  for (std::size_t d = 1; d <= 5; ++d) {
    const auto f = orthonormal_family(d);
    EXPECT_LE(max_entry_diff(frame_operator(f), qmatrix::identity(d)), 1e-15);
    const auto b = frame_bounds(f);
    EXPECT_NEAR(b.lower, 1, 1e-14);
    EXPECT_NEAR(b.upper, 1, 1e-14);
  }
}

TEST(FrameOperator, ScaledBasisVector) {
  const auto f = single_node(2, {qvector::unit(2, 0) * 2.0, qvector::unit(2, 1)});
  EXPECT_LE(max_entry_diff(frame_operator(f), qmatrix::diagonal({quaternion(4), quaternion(1)})), 1e-15);
  const auto b = frame_bounds(f);
  EXPECT_NEAR(b.lower, 1, 1e-14);
  EXPECT_NEAR(b.upper, 4, 1e-14);
}

TEST(FrameOperator, IndependentOfSummationOrder) {
  std::mt19937_64 rng(1);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = random_frame(100 + s);
    std::vector<std::size_t> order(f.node_count() * f.rank());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    qmatrix a(f.dim(), f.dim());
    for (std::size_t t : order) {
      const std::size_t k = t / f.rank(), i = t % f.rank();
      a = a + outer(f.vector(k, i), f.vector(k, i)) * f.weight(k);
    }
    EXPECT_LE(max_entry_diff(a, frame_operator(f)), 1e-12);
    EXPECT_LE(self_adjoint_defect(frame_operator(f)), 1e-13);
  }
}

TEST(FrameOperator, FrameInequalitySandwich) {
  std::mt19937_64 rng(2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = random_frame(200 + s);
    const auto b = frame_bounds(f);
    for (int t = 0; t < 100; ++t) {
      const qvector phi = random_vector(f.dim(), rng);
      const double n2 = norm2(phi), v = frame_sum(f, phi);
      EXPECT_GE(v, b.lower * n2 * (1 - 1e-10));
      EXPECT_LE(v, b.upper * n2 * (1 + 1e-10));
      EXPECT_NEAR(inner(phi, frame_operator(f) * phi).x0, v, 1e-10 * (1 + v));
    }
  }
}

TEST(FrameOperator, MixedOperatorAdjoint) {
  std::mt19937_64 rng(3);
  const auto f = random_frame(300);
  const auto g2 = f.transformed([&](std::size_t, std::size_t, const qvector& v) { return v + random_vector(v.dim(), rng, 0.3); });
  EXPECT_LE(max_entry_diff(adjoint(mixed_operator(f, g2)), mixed_operator(g2, f)), 1e-13);
  EXPECT_LE(max_entry_diff(mixed_operator(f, f), frame_operator(f)), 1e-15);
  EXPECT_THROW(mixed_operator(f, orthonormal_family(4)), shape_mismatch);
}

TEST(AnalysisSynthesis, FactorFrameOperator) {
  std::mt19937_64 rng(4);
  const auto f = random_frame(400);
  for (int t = 0; t < 50; ++t) {
    const qvector phi = random_vector(f.dim(), rng);
    const auto c = analysis(f, phi);
    EXPECT_LE(max_vector_diff(synthesis(f, c), frame_operator(f) * phi), 1e-12);
    EXPECT_NEAR(weighted_norm2(f, c), frame_sum(f, phi), 1e-12 * (1 + frame_sum(f, phi)));
  }
}

TEST(AnalysisSynthesis, SynthesisIsAdjointOfAnalysis) {
  std::mt19937_64 rng(5);
  const auto f = random_frame(500);
  for (int t = 0; t < 50; ++t) {
    const qvector phi = random_vector(f.dim(), rng);
    const auto c = random_coefficients(f, rng);
    const auto a = analysis(f, phi);
    quaternion weighted;
    for (std::size_t k = 0; k < f.node_count(); ++k)
      for (std::size_t i = 0; i < f.rank(); ++i) weighted += conj(a(k, i)) * c(k, i) * f.weight(k);
    EXPECT_LE(max_component_diff(inner(phi, synthesis(f, c)), weighted), 1e-12);
  }
}

TEST(CanonicalDual, OneDimensionalExample) {
  const auto f = single_node(1, {vec({quaternion(2)})});
  const auto dual = canonical_dual(f);
  EXPECT_LE(max_component_diff(dual.vector(0, 0)[0], quaternion(0.5)), 1e-15);
  const auto b = frame_bounds(dual);
  EXPECT_NEAR(b.lower, 0.25, 1e-15);
  EXPECT_NEAR(b.upper, 0.25, 1e-15);
}

TEST(CanonicalDual, BoundsAreReciprocal) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto f = random_frame(600 + s, 2 + s % 4, 1 + s % 2, 6);
    const auto fb = frame_bounds(f), db = frame_bounds(canonical_dual(f));
    EXPECT_NEAR(db.lower, 1 / fb.upper, 1e-8 / fb.upper);
    EXPECT_NEAR(db.upper, 1 / fb.lower, 1e-8 / fb.lower);
  }
}

TEST(CanonicalDual, FrameOperatorIsInverse) {
  const auto f = random_frame(700);
  const qmatrix a = frame_operator(f), ad = frame_operator(canonical_dual(f));
  EXPECT_LE(max_entry_diff(a * ad, qmatrix::identity(f.dim())), 1e-10);
}

TEST(CanonicalDual, DualOfDualIsOriginal) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto f = random_frame(800 + s);
    const auto dd = canonical_dual(canonical_dual(f));
    for (std::size_t k = 0; k < f.node_count(); ++k)
      for (std::size_t i = 0; i < f.rank(); ++i) EXPECT_LE(max_vector_diff(dd.vector(k, i), f.vector(k, i)), 1e-10);
  }
}

TEST(Reconstruction, BothFormsRecoverVector) {
  std::mt19937_64 rng(6);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = random_frame(900 + s);
    for (int t = 0; t < 20; ++t) {
      const qvector phi = random_vector(f.dim(), rng);
      EXPECT_LE(norm(reconstruct(f, phi) - phi), 1e-10 * norm(phi));
      EXPECT_LE(norm(reconstruct_dual_form(f, phi) - phi), 1e-10 * norm(phi));
    }
  }
}

TEST(Reconstruction, NotAFrameThrows) {
  const auto f = single_node(2, {qvector::unit(2, 0)});
  EXPECT_FALSE(frame_bounds(f).is_frame());
  EXPECT_THROW(canonical_dual(f), not_a_frame);
  EXPECT_THROW(reconstruct(f, qvector::unit(2, 0)), not_a_frame);
}

TEST(Bessel, RankDeficientFamilyIsBesselButNotFrame) {
  const auto f = single_node(2, {qvector::unit(2, 0) * 3.0});
  EXPECT_NEAR(bessel_bound(f), 9, 1e-13);
  EXPECT_NEAR(frame_bounds(f).lower, 0, 1e-15);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const qvector phi = random_vector(2, rng);
    EXPECT_LE(frame_sum(f, phi), 9 * norm2(phi) * (1 + 1e-12));
  }
}

TEST(Bessel, SynthesisBoundBySqrtOfBesselConstant) {
  std::mt19937_64 rng(8);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = random_frame(1000 + s);
    const double ratio = max_synthesis_ratio(f, rng, 200);
    EXPECT_LE(ratio, std::sqrt(bessel_bound(f)) * (1 + 1e-10));
    EXPECT_GT(ratio, 0);
  }
}

TEST(Riesz, EqualIntegratedVectorsHaveZeroLowerBound) {
  // v_1 = v_2 = e1 + e2 even though each node carries independent vectors.
  const qvector e1 = qvector::unit(2, 0), e2 = qvector::unit(2, 1);
  const frame_family f(2, 2, quadrature_measure({{quaternion(0), 1.0}, {quaternion(1), 1.0}}), {{e1, e2}, {e2, e1}});
  const auto rb = riesz_bounds(f);
  EXPECT_NEAR(rb.lower, 0, 1e-14);
  EXPECT_NEAR(rb.upper, 4, 1e-13);
}

TEST(Riesz, BoundsBracketSynthesisQuadraticForm) {
  std::mt19937_64 rng(9);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = random_frame(1100 + s, 4, 2, 5);
    const auto rb = riesz_bounds(f);
    const auto g = gram_matrix(integrated_vectors(f));
    for (int t = 0; t < 100; ++t) {
      std::vector<quaternion> c(f.rank());
      double c2 = 0;
      for (auto& q : c) {
        q = random_quaternion(rng);
        c2 += q.norm2();
      }
      const double v = riesz_synthesis_norm2(f, c);
      EXPECT_GE(v, rb.lower * c2 - 1e-10 * rb.upper * c2);
      EXPECT_LE(v, rb.upper * c2 * (1 + 1e-10));
      const qvector cv(c);
      EXPECT_NEAR(inner(cv, g * cv).x0, v, 1e-10 * (1 + v));
    }
  }
}

TEST(FrameFamily, ValidatesShape) {
  const qvector e1 = qvector::unit(2, 0);
  const quadrature_measure one_node({{quaternion(0), 1.0}});
  EXPECT_THROW(frame_family(2, 2, one_node, {{e1}}), shape_mismatch);
  EXPECT_THROW(frame_family(2, 1, one_node, {{e1}, {e1}}), shape_mismatch);
  EXPECT_THROW(frame_family(3, 1, one_node, {{e1}}), dimension_mismatch);
  EXPECT_THROW(frame_family(2, 2, one_node, {{e1, e1 * quaternion::k()}}), invalid_family);
  EXPECT_THROW(frame_family(2, 1, one_node, {{qvector(2)}}), invalid_family);
  EXPECT_THROW(frame_family(0, 1, one_node, {{e1}}), invalid_family);
  const qvector bad = vec({quaternion(std::nan("")), quaternion(0)});
  EXPECT_THROW(frame_family(2, 1, one_node, {{bad}}), non_finite);
}

TEST(FrameFamily, ValidatesMeasure) {
  EXPECT_THROW(quadrature_measure({{quaternion(0), 0.0}}), invalid_family);
  EXPECT_THROW(quadrature_measure({{quaternion(0), -1.0}}), invalid_family);
  EXPECT_THROW(quadrature_measure({{quaternion(0), std::numeric_limits<double>::infinity()}}), invalid_family);
  EXPECT_THROW(quadrature_measure({{quaternion(std::nan("")), 1.0}}), non_finite);
}

TEST(FrameFamily, WeightsScaleFrameOperator) {
  const auto f = random_frame(1200);
  std::vector<quadrature_node> nodes = f.measure().nodes();
  for (auto& n : nodes) n.weight *= 3;
  const frame_family g(f.dim(), f.rank(), quadrature_measure(nodes), f.vectors());
  EXPECT_LE(max_entry_diff(frame_operator(g), frame_operator(f) * 3.0), 1e-12);
}

}  // namespace
}  // namespace rqframes
