#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "random_states.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/model.hpp"

namespace vl = vortexlab;
using vl::testing::Sampler;

namespace {

vl::ModelParams params(double lambda, double alpha = 1.0) {
  return vl::ModelParams::create(lambda, alpha);
}

template <typename Fn>
void expect_error(Fn&& fn, vl::ErrorKind kind) {
  try {
    fn();
    FAIL() << "expected " << vl::to_string(kind);
  } catch (const vl::Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(ModelParams, RejectsInvalidInput) {
  expect_error([] { vl::ModelParams::create(0.5, 1.0); }, vl::ErrorKind::InvalidParams);
  expect_error([] { vl::ModelParams::create(-0.1, 1.0); }, vl::ErrorKind::InvalidParams);
  expect_error([] { vl::ModelParams::create(0.1, 0.0); }, vl::ErrorKind::InvalidParams);
  expect_error([] { vl::ModelParams::create(0.1, 1.0, 1, 1, 1, -1); },
               vl::ErrorKind::InvalidParams);
  expect_error([] { vl::ModelParams::create(0.1, 1.0, -1, 1, -1, -1); },
               vl::ErrorKind::InvalidParams);
  expect_error([] { vl::ModelParams::create(std::nan(""), 1.0); },
               vl::ErrorKind::InvalidParams);
}

TEST(DerivedCoefficients, LambdaZero) {
  const auto k = params(0.0).coefficients();
  EXPECT_EQ(k.Lambda, 1.0);
  EXPECT_EQ(k.Upsilon, 0.0);
  EXPECT_EQ(k.mu, -4.0);
  EXPECT_EQ(k.E, 1.0);
  EXPECT_EQ(k.Gamma, 1.0);
}

TEST(DerivedCoefficients, LambdaQuarter) {
  const auto k = params(0.25).coefficients();
  EXPECT_DOUBLE_EQ(k.Lambda, 5.0 / 8.0);
  EXPECT_DOUBLE_EQ(k.Upsilon, 3.0 / 8.0);
  EXPECT_DOUBLE_EQ(k.E, 0.5);
  EXPECT_DOUBLE_EQ(k.Gamma, 0.5);
}

TEST(DerivedCoefficients, SquareIdentity) {
  Sampler s(11);
  for (int i = 0; i < 200; ++i) {
    const int e1 = s.uniform(0, 1) < 0.5 ? 1 : -1;
    const int g1 = s.uniform(0, 1) < 0.5 ? 1 : -1;
    const auto p = vl::ModelParams::create(s.uniform(0, 0.4999), 1.0, e1, -e1, g1, -g1);
    const auto& k = p.coefficients();
    const double target = std::pow(1.0 - 2.0 * p.lambda(), 2);
    EXPECT_NEAR(k.E * k.E, k.Lambda * k.Lambda - k.Upsilon * k.Upsilon, 1e-15);
    EXPECT_NEAR(k.Gamma * k.Gamma, target, 1e-15);
    EXPECT_NEAR(k.E * k.E, target, 1e-15);
    EXPECT_EQ(std::abs(k.mu), 4.0);
  }
}

TEST(Normalization, OriginValues) {
  EXPECT_DOUBLE_EQ(vl::normalization_factor(params(0.0), {}), 1.0 / std::numbers::pi);
  for (double lambda : {0.0, 0.1, 0.3, 0.45}) {
    for (double alpha : {0.5, 1.0, 7.0}) {
      const auto p = params(lambda, alpha);
      const double expected =
          alpha * alpha / (std::numbers::pi * std::sqrt(p.coefficients().Lambda));
      EXPECT_NEAR(vl::normalization_factor(p, {}), expected, 1e-14 * expected);
    }
  }
}

TEST(Normalization, DenominatorGradientMatchesFiniteDifference) {
  Sampler s(3);
  for (int i = 0; i < 50; ++i) {
    const auto p = params(s.uniform(0, 0.45), s.alpha_choice());
    const auto q = s.state();
    const auto grad = vl::denominator_gradient(p, q);
    for (int k = 0; k < 4; ++k) {
      auto plus = q.to_array();
      auto minus = q.to_array();
      const double h = 1e-6;
      plus[k] += h;
      minus[k] -= h;
      const double fd = (vl::common_denominator(p, vl::VortexState::from_array(plus)) -
                         vl::common_denominator(p, vl::VortexState::from_array(minus))) /
                        (2 * h);
      EXPECT_NEAR(grad[k], fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(Ansatz, VanishesAtFirstNode) {
  Sampler s(5);
  for (int i = 0; i < 20; ++i) {
    const auto p = params(s.uniform(0, 0.45));
    const auto q = s.state();
    const vl::Point2 r2{s.uniform(-2, 2), s.uniform(-2, 2)};
    EXPECT_EQ(std::abs(vl::ansatz_value(p, q, {q.X1, q.Y1}, r2)), 0.0);
  }
}

TEST(Ansatz, ProductStateAtLambdaZero) {
  const auto p = params(0.0, 2.0);
  const vl::VortexState q{0.3, -0.4, 0.7, 0.1};
  const vl::Point2 r1{0.2, 0.5};
  const vl::Point2 r2{-0.6, 0.3};
  const double n = vl::normalization_factor(p, q);
  const double env = std::exp(-0.5 * 2.0 * (0.04 + 0.25 + 0.36 + 0.09));
  // psi2 carries eps2 = +1, phi1 carries gamma1 = +1.
  const vl::Complex psi2(r1.x - q.X1, r1.y - q.Y1);
  const vl::Complex phi1(r2.x - q.X2, r2.y - q.Y2);
  const vl::Complex expected = n * psi2 * phi1 * env;
  EXPECT_NEAR(std::abs(vl::ansatz_value(p, q, r1, r2) - expected), 0.0, 1e-15);
}

TEST(Ansatz, RealAtHalfWithoutValidation) {
  // lambda = 1/2 is rejected; the amplitude built by hand is then real.
  EXPECT_THROW(params(0.5), vl::Error);
  const double x = 0.4, y = -0.3, X = 0.1, Y = 0.2, x2 = -0.5, y2 = 0.6, X2 = 0.3, Y2 = -0.1;
  const vl::Complex psi1(x - X, -(y - Y)), psi2(x - X, y - Y);
  const vl::Complex phi1(x2 - X2, y2 - Y2), phi2(x2 - X2, -(y2 - Y2));
  const vl::Complex sum = 0.5 * psi1 * phi2 + 0.5 * psi2 * phi1;
  EXPECT_NEAR(sum.imag(), 0.0, 1e-15);
}

TEST(Ansatz, TimeDerivativeMatchesFiniteDifference) {
  Sampler s(7);
  for (int i = 0; i < 30; ++i) {
    const auto p = params(s.uniform(0, 0.45), s.alpha_choice());
    const auto q = s.state(1.0);
    const auto v = s.velocity();
    const vl::Point2 r1{s.uniform(-1, 1), s.uniform(-1, 1)};
    const vl::Point2 r2{s.uniform(-1, 1), s.uniform(-1, 1)};
    const double h = 1e-5;
    auto shifted = [&](double t) {
      auto a = q.to_array();
      const auto d = v.to_array();
      for (int k = 0; k < 4; ++k) a[k] += t * d[k];
      return vl::VortexState::from_array(a);
    };
    const vl::Complex fd =
        (vl::ansatz_value(p, shifted(h), r1, r2) - vl::ansatz_value(p, shifted(-h), r1, r2)) /
        (2 * h);
    const vl::Complex exact = vl::ansatz_time_derivative(p, q, v, r1, r2);
    EXPECT_NEAR(std::abs(fd - exact), 0.0, 1e-6 * std::max(1.0, std::abs(exact)));
    EXPECT_EQ(std::abs(vl::ansatz_time_derivative(p, q, {}, r1, r2)), 0.0);
  }
}

TEST(Ansatz, LaplacianMatchesFivePointStencil) {
  Sampler s(9);
  for (int i = 0; i < 30; ++i) {
    const auto p = params(s.uniform(0, 0.45), s.alpha_choice());
    const auto q = s.state(1.0);
    const vl::Point2 r1{s.uniform(-1, 1), s.uniform(-1, 1)};
    const vl::Point2 r2{s.uniform(-1, 1), s.uniform(-1, 1)};
    const double h = 1e-3;
    auto f = [&](double dx1, double dy1, double dx2, double dy2) {
      return vl::ansatz_value(p, q, {r1.x + dx1, r1.y + dy1}, {r2.x + dx2, r2.y + dy2});
    };
    const vl::Complex c = f(0, 0, 0, 0);
    const vl::Complex fd = (f(h, 0, 0, 0) + f(-h, 0, 0, 0) + f(0, h, 0, 0) + f(0, -h, 0, 0) +
                            f(0, 0, h, 0) + f(0, 0, -h, 0) + f(0, 0, 0, h) + f(0, 0, 0, -h) -
                            8.0 * c) /
                           (h * h);
    const vl::Complex exact = vl::ansatz_laplacian(p, q, r1, r2);
    EXPECT_NEAR(std::abs(fd - exact), 0.0, 1e-4 * std::max(1.0, std::abs(exact)));
  }
}

TEST(Ansatz, LaplacianDecaysFarAway) {
  const auto p = params(0.2);
  EXPECT_LT(std::abs(vl::ansatz_laplacian(p, {0.1, 0.2, -0.3, 0.4}, {9, 9}, {-9, 8})), 1e-60);
}

TEST(ReducedLagrangian, OriginAtRest) {
  EXPECT_DOUBLE_EQ(vl::reduced_lagrangian(params(0.0), {}, {}), -1.0);
  EXPECT_DOUBLE_EQ(vl::reduced_hamiltonian(params(0.0), {}), 1.0);
  for (double alpha : {1.0, 10.0, 100.0}) {
    EXPECT_NEAR(vl::reduced_hamiltonian(params(0.3, alpha), {}), alpha, 1e-12 * alpha);
  }
}

TEST(ReducedLagrangian, LinearInVelocityAndLegendre) {
  Sampler s(13);
  for (int i = 0; i < 100; ++i) {
    const auto p = params(s.uniform(0, 0.45), s.alpha_choice());
    const auto q = s.state();
    const auto v = s.velocity();
    const double c = s.uniform(-3, 3);
    const auto cv = vl::VortexVelocity::from_array(
        {c * v.dX1, c * v.dY1, c * v.dX2, c * v.dY2});
    const double l0 = vl::reduced_lagrangian(p, q, {});
    const double lv = vl::reduced_lagrangian(p, q, v);
    const double lcv = vl::reduced_lagrangian(p, q, cv);
    EXPECT_NEAR(lcv - l0, c * (lv - l0), 1e-12 * std::max(1.0, std::abs(lcv)));
    EXPECT_DOUBLE_EQ(vl::reduced_hamiltonian(p, q), -l0);
    EXPECT_GT(vl::reduced_hamiltonian(p, q), 0.0);
  }
}

TEST(CanonicalMomenta, MatchVelocityDerivative) {
  Sampler s(17);
  for (int i = 0; i < 100; ++i) {
    const auto p = params(s.uniform(0, 0.45), s.alpha_choice());
    const auto q = s.state();
    const auto mom = vl::canonical_momenta(p, q).to_array();
    for (const auto& v0 : {vl::VortexVelocity{}, s.velocity(5.0)}) {
      for (int k = 0; k < 4; ++k) {
        auto plus = v0.to_array();
        auto minus = v0.to_array();
        plus[k] += 1e-6;
        minus[k] -= 1e-6;
        const double fd = (vl::reduced_lagrangian(p, q, vl::VortexVelocity::from_array(plus)) -
                           vl::reduced_lagrangian(p, q, vl::VortexVelocity::from_array(minus))) /
                          2e-6;
        EXPECT_NEAR(fd, mom[k], 1e-6 * std::max(1.0, std::abs(mom[k])));
      }
    }
  }
  const auto zero = vl::canonical_momenta(params(0.2), {}).to_array();
  for (double m : zero) EXPECT_EQ(m, 0.0);
}

TEST(CanonicalMomenta, FixedSecondVortex) {
  Sampler s(19);
  for (int i = 0; i < 20; ++i) {
    const auto p = params(s.uniform(0, 0.45), s.alpha_choice());
    const double X = s.uniform(-2, 2), Y = s.uniform(-2, 2);
    const auto& k = p.coefficients();
    const double a = p.alpha();
    const auto mom = vl::canonical_momenta(p, {X, Y, 0, 0});
    const double expected = k.E * a * Y / (k.Lambda * (1 + a * (X * X + Y * Y)));
    EXPECT_NEAR(mom.pX1, expected, 1e-13 * std::max(1.0, std::abs(expected)));
  }
}

TEST(AngularMomenta, DefinitionAndClosedForm) {
  Sampler s(23);
  for (int i = 0; i < 50; ++i) {
    const auto p = params(s.uniform(0, 0.45), s.alpha_choice());
    const auto q = s.state();
    const auto mom = vl::canonical_momenta(p, q);
    const auto am = vl::angular_momenta(p, q);
    EXPECT_DOUBLE_EQ(am.s1, q.X1 * mom.pY1 - q.Y1 * mom.pX1);
    EXPECT_DOUBLE_EQ(am.s2, q.X2 * mom.pY2 - q.Y2 * mom.pX2);
    const auto& k = p.coefficients();
    const double a1 = 1 / p.alpha() + q.X1 * q.X1 + q.Y1 * q.Y1;
    const double a2 = 1 / p.alpha() + q.X2 * q.X2 + q.Y2 * q.Y2;
    const double d = vl::common_denominator(p, q);
    EXPECT_NEAR(am.s1, -k.E * a2 * (q.X1 * q.X1 + q.Y1 * q.Y1) / d, 1e-12);
    EXPECT_NEAR(am.s2, -k.Gamma * a1 * (q.X2 * q.X2 + q.Y2 * q.Y2) / d, 1e-12);
  }
  const auto zero = vl::angular_momenta(params(0.1), {});
  EXPECT_EQ(zero.s1, 0.0);
  EXPECT_EQ(zero.s2, 0.0);
}

TEST(Coupling, SignFollowsEpsOneGammaTwo) {
  Sampler s(29);
  const int configs[4][4] = {{-1, 1, 1, -1}, {1, -1, -1, 1}, {-1, 1, -1, 1}, {1, -1, 1, -1}};
  for (const auto& c : configs) {
    const auto p = vl::ModelParams::create(0.2, 1.0, c[0], c[1], c[2], c[3]);
    const bool ferro_expected = c[0] == c[3];
    for (int i = 0; i < 100; ++i) {
      const auto cp = vl::coupling_g(p, s.state());
      EXPECT_EQ(cp.classification == vl::CouplingClass::Ferro, ferro_expected);
      EXPECT_EQ(cp.g < 0.0, ferro_expected);
    }
  }
  EXPECT_EQ(vl::to_string(vl::CouplingClass::Ferro), "Ferro-coupling");
  EXPECT_EQ(vl::to_string(vl::CouplingClass::Antiferro), "Antiferro-coupling");
}

TEST(Coupling, SpinProductConstantAtLambdaZero) {
  Sampler s(31);
  const auto p = params(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const auto q = s.state();
    const auto am = vl::angular_momenta(p, q);
    const double g = vl::coupling_g(p, q).g;
    EXPECT_NEAR(-2.0 * g * am.s1 * am.s2, 2.0, 1e-12);
  }
}

TEST(Coupling, Errors) {
  expect_error([] { vl::coupling_g(params(0.1), {0, 0, 1, 1}); },
               vl::ErrorKind::OriginSingular);
  expect_error([] { vl::nh_residual(params(0.1), {1, 1, 0, 0}); },
               vl::ErrorKind::OriginSingular);
}

TEST(NhResidual, VanishesAtLambdaZero) {
  Sampler s(37);
  for (int i = 0; i < 100; ++i) {
    EXPECT_NEAR(vl::nh_residual(params(0.0, s.alpha_choice()), s.state()), 0.0, 1e-12);
  }
}

TEST(NhResidual, MatchesClosedFormAndShrinksWithLambda) {
  const vl::VortexState q{0.7, -0.2, 0.4, 0.9};
  double previous = 0.0;
  for (double lambda : {1e-4, 1e-3, 1e-2, 0.1, 0.25}) {
    const auto p = params(lambda, 2.0);
    const auto& k = p.coefficients();
    const double r1 = q.X1 * q.X1 + q.Y1 * q.Y1, r2 = q.X2 * q.X2 + q.Y2 * q.Y2;
    const double a1 = 0.5 + r1, a2 = 0.5 + r2;
    const double expected = 0.5 * p.alpha() * k.Lambda * (1 - k.E * k.E) * (a2 * r1 + a1 * r2) /
                            vl::common_denominator(p, q);
    const double got = vl::nh_residual(p, q);
    EXPECT_NEAR(got, expected, 1e-12 * std::max(1.0, std::abs(expected)));
    EXPECT_GT(std::abs(got), previous);
    previous = std::abs(got);
  }
  EXPECT_LT(std::abs(vl::nh_residual(params(1e-6, 2.0), q)), 1e-5);
}
