#pragma once

// Gauss-Hermite tensor-product quadrature used as an independent check of
// every closed-form integral: the normalization, the reduced Lagrangian and
// the orbital overlaps. All integrands are polynomials against the Gaussian
// weight, so a modest node count is exact up to roundoff.

#include <Eigen/Core>
#include <vector>

#include "vortexlab/model.hpp"

namespace vortexlab {

/// Nodes and weights for int f(x) exp(-alpha x^2) dx, exact for polynomial
/// f of degree <= 2n - 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
  double scaling = 1.0;  ///< alpha of the weight exp(-alpha x^2)
};

/// Golub-Welsch construction, cached per (n, alpha). Throws OrderOutOfRange
/// unless 1 <= n <= 64.
const QuadratureRule& gauss_hermite_rule(int n, double alpha);

/// int int |amplitude_scale * Phi|^2 over both particles.
double norm_quadrature(const ModelParams& params, const VortexState& q, int n = 7,
                       double amplitude_scale = 1.0);

/// int int Phi^* (i d/dt + (nabla_1^2 + nabla_2^2) / 2) Phi with the
/// trapping potential set to zero. The real part matches
/// reduced_lagrangian up to a state-independent additive constant.
Complex lagrangian_quadrature(const ModelParams& params, const VortexState& q,
                              const VortexVelocity& v, int n = 7);

/// <Phi| -(nabla_1^2 + nabla_2^2)/2 |Phi>.
double kinetic_energy_quadrature(const ModelParams& params, const VortexState& q,
                                 int n = 7);

struct OverlapQuadrature {
  Eigen::Matrix2cd S_A = Eigen::Matrix2cd::Zero();  ///< {psi1, psi2}
  Eigen::Matrix2cd S_B = Eigen::Matrix2cd::Zero();  ///< {phi2, phi1}
};

/// Two-dimensional quadrature of the pairwise single-particle overlaps.
OverlapQuadrature overlap_quadrature(const ModelParams& params, const VortexState& q,
                                     int n = 7);

}  // namespace vortexlab
