#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "random_states.hpp"
#include "vortexlab/entanglement.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/quadrature.hpp"

namespace vl = vortexlab;
using vl::testing::Sampler;

namespace {

vl::ModelParams params(double lambda, double alpha = 1.0) {
  return vl::ModelParams::create(lambda, alpha);
}

const double kLn2 = std::log(2.0);

}  // namespace

TEST(Overlaps, OriginIsScaledIdentity) {
  for (double alpha : {1.0, 10.0}) {
    const auto ov = vl::overlap_matrices(params(0.2, alpha), {});
    const Eigen::Matrix2cd expected =
        (std::numbers::pi / (alpha * alpha)) * Eigen::Matrix2cd::Identity();
    EXPECT_LT((ov.S_A - expected).norm(), 1e-15);
    EXPECT_LT((ov.S_B - expected).norm(), 1e-15);
  }
}

TEST(Overlaps, HermitianAndMatchQuadrature) {
  Sampler s(101);
  for (int i = 0; i < 100; ++i) {
    const auto p = params(s.uniform(0, 0.45), s.alpha_choice());
    const auto q = s.state();
    const auto ov = vl::overlap_matrices(p, q);
    EXPECT_EQ((ov.S_A - ov.S_A.adjoint()).norm(), 0.0);
    EXPECT_EQ((ov.S_B - ov.S_B.adjoint()).norm(), 0.0);
    const auto quad = vl::overlap_quadrature(p, q);
    const double scale = ov.S_A.norm() + ov.S_B.norm();
    EXPECT_LT((quad.S_A - ov.S_A).norm(), 1e-12 * scale);
    EXPECT_LT((quad.S_B - ov.S_B).norm(), 1e-12 * scale);
  }
}

TEST(OrthogonalDensity, OriginEigenvalues) {
  for (double lambda : {0.1, 0.3, 0.45}) {
    const auto p = params(lambda);
    const auto rd = vl::reduced_density_orthogonal(p, {});
    const double big_lambda = p.coefficients().Lambda;
    EXPECT_EQ(std::abs(rd.b), 0.0);
    EXPECT_NEAR(rd.p_plus, (1 - lambda) * (1 - lambda) / big_lambda, 1e-14);
    EXPECT_NEAR(rd.p_minus, lambda * lambda / big_lambda, 1e-14);
    EXPECT_NEAR(rd.p_plus + rd.p_minus, 1.0, 1e-15);
  }
  const auto rd0 = vl::reduced_density_orthogonal(params(0.0), {0.3, 0.2, -0.5, 0.1});
  EXPECT_EQ(rd0.p_plus, 1.0);
  EXPECT_EQ(rd0.p_minus, 0.0);
}

TEST(OrthogonalDensity, TraceNormalizedAndOrdered) {
  Sampler s(103);
  for (int i = 0; i < 200; ++i) {
    const auto rd = vl::reduced_density_orthogonal(params(s.uniform(0, 0.49)), s.state());
    EXPECT_GE(rd.a1, 0.0);
    EXPECT_GE(rd.a2, 0.0);
    EXPECT_NEAR(rd.p_plus + rd.p_minus, 1.0, 1e-12);
    EXPECT_LE(rd.p_minus, rd.p_plus);
  }
}

TEST(GramEntropy, ProductStateIsExactlyZero) {
  Sampler s(107);
  for (int i = 0; i < 50; ++i) {
    const auto q = s.state();
    EXPECT_EQ(vl::entropy_gram(params(0.0, s.alpha_choice()), q), 0.0);
    const auto eq = vl::entropy_subsystem_equality(params(0.0), q);
    EXPECT_EQ(eq.S_psi, 0.0);
    EXPECT_EQ(eq.S_phi, 0.0);
  }
}

TEST(GramEntropy, MaximalNearHalf) {
  EXPECT_NEAR(vl::entropy_gram(params(0.4999), {}), kLn2, 1e-3);
}

TEST(GramEntropy, MatchesOrthogonalRouteWhereOverlapsVanish) {
  for (double lambda : {0.05, 0.2, 0.3, 0.45}) {
    const auto p = params(lambda, 2.0);
    EXPECT_NEAR(vl::entropy_gram(p, {}), vl::entropy_orthogonal(p, {}), 1e-12);
  }
  const auto p = params(0.3);
  const double a = 0.09 / 0.58, b = 0.49 / 0.58;
  const double expected = -a * std::log(a) - b * std::log(b);
  const auto eq = vl::entropy_subsystem_equality(p, {});
  EXPECT_NEAR(eq.S_psi, expected, 1e-14);
  EXPECT_NEAR(eq.S_phi, expected, 1e-14);
}

TEST(GramEntropy, BoundsAndSubsystemEquality) {
  Sampler s(109);
  for (int i = 0; i < 500; ++i) {
    const auto p = params(s.uniform(1e-3, 0.4999), s.alpha_choice());
    const auto q = s.state();
    const auto spec = vl::gram_spectrum(p, q);
    EXPECT_GT(spec.entropy, 0.0);
    EXPECT_LE(spec.entropy, kLn2 + 1e-15);
    EXPECT_NEAR(spec.p_plus + spec.p_minus, 1.0, 1e-12);
    const auto eq = vl::entropy_subsystem_equality(p, q);
    EXPECT_LT(std::abs(eq.difference), 1e-10);
    EXPECT_NEAR(eq.S_psi, spec.entropy, 1e-12);
  }
}

TEST(EntropySweep, OriginStateShape) {
  const auto grid = vl::default_lambda_grid();
  ASSERT_EQ(grid.size(), 200u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_DOUBLE_EQ(grid.back(), 0.499);
  const auto sweep = vl::entropy_sweep(params(0.0), {}, grid);
  EXPECT_EQ(sweep.rows.front().S_gram, 0.0);
  for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
    EXPECT_GT(sweep.rows[i].S_gram, sweep.rows[i - 1].S_gram);
  }
  auto derivative_near = [&](double l) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
      if (std::abs(sweep.rows[i].lambda - l) < std::abs(sweep.rows[best].lambda - l)) best = i;
    }
    return sweep.rows[best].dS_dlambda;
  };
  EXPECT_LT(derivative_near(0.49), derivative_near(0.25));
  EXPECT_NEAR(sweep.stationary_point, 0.5, 0.01);
  for (const auto& row : sweep.rows) EXPECT_NEAR(row.difference, 0.0, 1e-12);
}

TEST(EntropySweep, StationaryPointAtRepresentativeStates) {
  for (const vl::VortexState& q : {vl::VortexState{0.5, 0.0, 0.0, 0.5},
                                   vl::VortexState{0.3, -0.2, 0.4, 0.1},
                                   vl::VortexState{1.0, 1.0, -1.0, 0.5}}) {
    const auto sweep = vl::entropy_sweep(params(0.0), q, vl::default_lambda_grid());
    EXPECT_NEAR(sweep.stationary_point, 0.5, 0.01);
  }
}

TEST(EntropySweep, RejectsBadGrids) {
  const auto p = params(0.0);
  EXPECT_THROW(vl::entropy_sweep(p, {}, {}), vl::Error);
  EXPECT_THROW(vl::entropy_sweep(p, {}, {0.1}), vl::Error);
  EXPECT_THROW(vl::entropy_sweep(p, {}, {0.1, 0.5}), vl::Error);
  EXPECT_THROW(vl::entropy_sweep(p, {}, {0.2, 0.1}), vl::Error);
  EXPECT_THROW(vl::entropy_sweep(p, {}, {-0.1, 0.1}), vl::Error);
}

TEST(VonNeumann, EdgeCases) {
  EXPECT_EQ(vl::von_neumann_entropy(1.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(vl::von_neumann_entropy(0.5, 0.5), kLn2);
}
