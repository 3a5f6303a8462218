// Brute-force reduced density operator on a uniform grid, compared with the
// Gram-matrix spectrum. The grid is coarse but the integrands are smooth and
// Gaussian-decaying, so the uniform rule converges very quickly.

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "random_states.hpp"
#include "vortexlab/entanglement.hpp"

namespace vl = vortexlab;

namespace {

struct GridSpectrum {
  double p_plus = 0.0;
  double p_minus = 0.0;
};

GridSpectrum grid_spectrum(const vl::ModelParams& p, const vl::VortexState& q, int n,
                           double half_width) {
  const double h = 2.0 * half_width / (n - 1);
  const int m = n * n;
  std::vector<vl::Point2> pts(m);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) pts[iy * n + ix] = {-half_width + ix * h, -half_width + iy * h};
  }
  Eigen::MatrixXcd amp(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) amp(i, j) = vl::ansatz_value(p, q, pts[i], pts[j]) * h * h;
  }
  const Eigen::MatrixXcd rho = amp * amp.adjoint();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double tr = ev.sum();
  return {ev[m - 1] / tr, ev[m - 2] / tr};
}

}  // namespace

TEST(DensityGridOracle, MatchesGramSpectrum) {
  vl::testing::Sampler s(173);
  for (int i = 0; i < 3; ++i) {
    const auto p = vl::ModelParams::create(s.uniform(0.05, 0.45), 1.0);
    const auto q = s.state(1.0);
    const auto grid = grid_spectrum(p, q, 32, 6.0);
    const auto gram = vl::gram_spectrum(p, q);
    EXPECT_NEAR(grid.p_plus, gram.p_plus, 1e-4);
    EXPECT_NEAR(grid.p_minus, gram.p_minus, 1e-4);
    EXPECT_NEAR(vl::von_neumann_entropy(grid.p_plus, grid.p_minus), gram.entropy, 1e-4);
  }
}
