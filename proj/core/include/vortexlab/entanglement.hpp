#pragma once

// Reduced density matrix and von Neumann entropy of the two-vortex state.
//
// Two routes are provided. reduced_density_orthogonal diagonalizes the
// coefficient matrix of rho_psi in the {psi1, psi2} basis as if that basis
// were orthonormal. entropy_gram accounts for the overlaps of the
// single-particle orbitals exactly and is the authoritative value; the two
// agree only where the cross overlaps vanish.

#include <Eigen/Core>
#include <vector>

#include "vortexlab/model.hpp"

namespace vortexlab {

/// Gram matrices S(i, j) = <e_i|e_j> of the unnormalized orbitals,
/// S_A over {psi1, psi2} and S_B over {phi2, phi1} (the partners of psi1
/// and psi2 in the state).
struct OverlapMatrices {
  Eigen::Matrix2cd S_A = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd S_B = Eigen::Matrix2cd::Zero();
};

OverlapMatrices overlap_matrices(const ModelParams& params, const VortexState& q);

struct ReducedDensity {
  double a1 = 0.0;
  double a2 = 0.0;
  Complex b{};
  Eigen::Matrix2cd S_A = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd S_B = Eigen::Matrix2cd::Zero();
  double p_plus = 0.0;   ///< trace-normalized
  double p_minus = 0.0;  ///< trace-normalized
};

ReducedDensity reduced_density_orthogonal(const ModelParams& params, const VortexState& q);

/// -sum p ln p with 0 ln 0 = 0.
double von_neumann_entropy(double p_plus, double p_minus) noexcept;

/// Entropy from the orthonormal-orbital eigenvalues.
double entropy_orthogonal(const ModelParams& params, const VortexState& q);

struct GramSpectrum {
  double entropy = 0.0;
  double p_plus = 0.0;
  double p_minus = 0.0;
  Eigen::Matrix2cd T = Eigen::Matrix2cd::Zero();  ///< unnormalized
};

/// Spectrum of T = S_A^{1/2} C S_B^T C^dagger S_A^{1/2}, C = diag(lambda, 1 - lambda),
/// normalized by its trace <Phi|Phi>. Eigenvalues in [-1e-12, 0] are
/// clamped; anything more negative throws NumericalRankLoss.
GramSpectrum gram_spectrum(const ModelParams& params, const VortexState& q);

double entropy_gram(const ModelParams& params, const VortexState& q);

struct SubsystemEntropies {
  double S_psi = 0.0;
  double S_phi = 0.0;
  double difference = 0.0;  ///< S_psi - S_phi
};

/// Both reduced entropies through the Gram route.
SubsystemEntropies entropy_subsystem_equality(const ModelParams& params,
                                              const VortexState& q);

struct EntropySweepRow {
  double lambda = 0.0;
  double S_orthogonal = 0.0;
  double S_gram = 0.0;
  double difference = 0.0;     ///< S_gram - S_orthogonal
  double dS_dlambda = 0.0;     ///< one-sided difference of S_gram
};

struct EntropySweep {
  std::vector<EntropySweepRow> rows;
  /// Root of a straight-line fit to dS/dlambda over the upper quarter of
  /// the grid, where the derivative is linear in (1/2 - lambda).
  double stationary_point = 0.0;
  double fit_slope = 0.0;
};

/// 200 uniform points on [0, 0.499].
std::vector<double> default_lambda_grid();

/// Tabulates the entropy over lambda, keeping alpha and the signs of
/// params_base. Throws InvalidParams for an empty or out-of-range grid.
EntropySweep entropy_sweep(const ModelParams& params_base, const VortexState& q,
                           const std::vector<double>& lambda_grid);

}  // namespace vortexlab
