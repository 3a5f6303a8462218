#pragma once

// First-order equations of motion of the velocity-linear reduced Lagrangian
//   L = a(q) . qdot - V(q)
// and an adaptive integrator for the resulting vortex trajectories.
//
// Euler-Lagrange gives F qdot = grad V with F_ij = d_i a_j - d_j a_i. The
// flow conserves V exactly because qdot . grad V = qdot^T F qdot = 0.

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vortexlab/model.hpp"

namespace vortexlab {

/// Coefficients of the velocities in L:
///   (E A2 Y1, -E A2 X1, Gamma A1 Y2, -Gamma A1 X2) / D.
Vec4 kinetic_coefficients(const ModelParams& params, const VortexState& q);

/// J(i, j) = d a_j / d q_i, from closed-form partials.
Eigen::Matrix4d kinetic_jacobian(const ModelParams& params, const VortexState& q);

/// Velocity-independent part of -L. Equal to reduced_hamiltonian.
double potential_v(const ModelParams& params, const VortexState& q);

Vec4 potential_gradient(const ModelParams& params, const VortexState& q);

struct SymplecticForm {
  Eigen::Matrix4d F = Eigen::Matrix4d::Zero();
};

SymplecticForm symplectic_form(const ModelParams& params, const VortexState& q);

struct FlowOptions {
  /// Singular when |det F| < det_rel_threshold * ||F||_F^4.
  double det_rel_threshold = 1e-12;
  /// Singular when min(|E|, |Gamma|) / Lambda falls below this floor. The
  /// determinant test alone is scale free and cannot see E, Gamma -> 0.
  double kinetic_floor = 1e-2;
};

/// Equations of motion for fixed parameters. Construction throws
/// SingularSymplecticForm when the kinetic term is degenerate
/// (lambda -> 1/2).
class VortexFlow {
 public:
  explicit VortexFlow(const ModelParams& params, FlowOptions options = {});

  const ModelParams& params() const noexcept { return params_; }
  const FlowOptions& options() const noexcept { return options_; }

  /// Solves F qdot = grad V by LU with partial pivoting.
  VortexVelocity velocity(const VortexState& q) const;

 private:
  ModelParams params_;
  FlowOptions options_;
};

VortexVelocity velocity_field(const ModelParams& params, const VortexState& q,
                              FlowOptions options = {});

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  /// Zero selects t_end / 1000.
  double initial_step = 0.0;
  std::size_t max_steps = 50'000'000;
  /// Integrate qdot = -F^{-1} grad V, i.e. run the flow backwards in time
  /// while keeping the reported time axis increasing.
  bool reverse_time = false;
  FlowOptions flow;
};

struct StepDiagnostics {
  double H = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double energy_drift = 0.0;  ///< (H - H0) / |H0|
  double step = 0.0;          ///< size of the step that produced this record
};

struct IntegratorStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<VortexState> states;
  std::vector<StepDiagnostics> diagnostics;
  IntegratorStats stats;

  std::size_t size() const noexcept { return times.size(); }
  double max_abs_energy_drift() const noexcept;
};

/// Dormand-Prince 5(4) with error-controlled steps from t = 0 to t_end.
/// Throws SingularSymplecticForm if the form degenerates along the way and
/// StepSizeUnderflow when the step drops below 1e-14 t_end.
Trajectory integrate(const ModelParams& params, const VortexState& state0,
                     double t_end, const IntegratorOptions& options = {});

struct SinusoidFit {
  double omega = 0.0;
  double offset = 0.0;
  double cos_amplitude = 0.0;
  double sin_amplitude = 0.0;
  double rms_residual = 0.0;
};

/// Least-squares fit of c + A cos(w t) + B sin(w t). The frequency starts
/// from the mean zero-crossing spacing and is refined by a golden-section
/// search on the projected residual. Requires at least two mean crossings.
SinusoidFit fit_sinusoid(const std::vector<double>& times,
                         const std::vector<double>& values);

struct AntisymmetricReport {
  bool e_equals_minus_gamma = false;
  bool completed = false;            ///< false if integration aborted
  std::string failure;               ///< error text when !completed
  double t_reached = 0.0;
  double max_subspace_drift = 0.0;   ///< max |(X2, Y2) + (X1, Y1)|
  double max_displacement = 0.0;     ///< max |q(t) - q(0)|
  double max_abs_energy_drift = 0.0;
  bool subspace_invariant = false;   ///< drift below 1e-8
  bool is_static = false;            ///< displacement below 1e-8
};

/// Integrates from (X1, Y1, -X1, -Y1) and reports whether the trajectory
/// stays on the antisymmetric subspace. Reports only; never asserts.
/// Throws InvalidParams if the initial state is not antisymmetric.
AntisymmetricReport antisymmetric_subspace_diagnostic(
    const ModelParams& params, const VortexState& state0, double t_end,
    const IntegratorOptions& options = {});

}  // namespace vortexlab
