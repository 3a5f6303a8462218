#pragma once

// Fixed-vortex reduction: the second vortex pinned at the origin, the point
// transformation (X, Y) -> (xi, eta) that makes the pair canonically
// conjugate, the transformed Lagrangian and Hamiltonian, the analytic
// rotation flow, and the Dirac bracket for the two second-class
// constraints of the velocity-linear Lagrangian.
//
// All transforms assume E > 0 (default signs give E = 1 - 2 lambda).

#include <Eigen/Core>
#include <array>
#include <functional>

#include "vortexlab/dual.hpp"
#include "vortexlab/model.hpp"

namespace vortexlab {

/// Dimensionless coordinates with xi^2 + eta^2 < 2E / Lambda.
struct CanonicalState {
  double xi = 0.0;
  double eta = 0.0;
};

struct CanonicalVelocity {
  double dxi = 0.0;
  double deta = 0.0;
};

/// xi = X sqrt(2 alpha E / (Lambda (1 + alpha R))), eta likewise with Y.
/// Throws NonPositiveE.
CanonicalState to_canonical(const ModelParams& params, double X, double Y);

/// Inverse via 1 + alpha R = 2E / (2E - Lambda (xi^2 + eta^2)).
/// Throws DomainViolation outside the open disc, NonPositiveE.
Point2 from_canonical(const ModelParams& params, const CanonicalState& c);

/// det d(xi, eta)/d(X, Y) = 2 alpha E / (Lambda (1 + alpha R)^2).
double canonical_jacobian(const ModelParams& params, double X, double Y);

/// Chain rule: (dxi, deta) = d(xi, eta)/d(X, Y) . (dX, dY).
CanonicalVelocity transport_velocity(const ModelParams& params, double X, double Y,
                                     double dX, double dY);

/// (dxi eta - xi deta) / 2 + (alpha Lambda / 4E)(xi^2 + eta^2).
///
/// Equals fixed_vortex_lagrangian at the corresponding point plus alpha/2;
/// the transformed form absorbs that constant.
double canonical_lagrangian(const ModelParams& params, const CanonicalState& c,
                            const CanonicalVelocity& v);

/// -alpha Lambda (xi^2 + eta^2) / (4E). Non-positive on the domain.
double canonical_hamiltonian(const ModelParams& params, const CanonicalState& c);

/// Rotation by omega t with omega = angular_frequency(params).
CanonicalState canonical_flow(const ModelParams& params, const CanonicalState& c0,
                              double t);

/// omega = kappa alpha with kappa = Lambda / (2E). Throws NonPositiveE.
double angular_frequency(const ModelParams& params);

/// Reduced Lagrangian with (X2, Y2) = (0, 0):
///   E alpha (dX Y - X dY) / (Lambda (1 + alpha R)) - alpha / (2 (1 + alpha R)).
///
/// This is reduced_lagrangian at (X, Y, 0, 0) plus the constant alpha / 2.
double fixed_vortex_lagrangian(const ModelParams& params, double X, double Y, double dX,
                               double dY);

// --- Dirac bracket -------------------------------------------------------

/// Phase-space point ordered (xi, p_xi, eta, p_eta).
using PhasePoint = std::array<double, 4>;
using PhaseDual = Dual<4>;
using DualObservable = std::function<PhaseDual(const std::array<PhaseDual, 4>&)>;
using ScalarObservable = std::function<double(const PhasePoint&)>;

/// Point on the constraint surface p_xi = eta / 2, p_eta = -xi / 2.
PhasePoint on_constraint_surface(const CanonicalState& c);

struct ConstraintAlgebra {
  double chi_xi = 0.0;   ///< p_xi - eta / 2
  double chi_eta = 0.0;  ///< p_eta + xi / 2
  Eigen::Matrix2d C = Eigen::Matrix2d::Zero();      ///< {chi_a, chi_b}_P
  Eigen::Matrix2d C_inv = Eigen::Matrix2d::Zero();
};

/// Throws SingularConstraintMatrix if |det C| < 1e-12.
ConstraintAlgebra constraint_algebra(const PhasePoint& z);

/// {f, g}_P from gradients ordered (xi, p_xi, eta, p_eta).
double poisson_bracket(const std::array<double, 4>& grad_f,
                       const std::array<double, 4>& grad_g);

/// {f, g}_D = {f, g}_P - {f, chi_a}_P (C^-1)_ab {chi_b, g}_P with exact
/// partials from forward-mode differentiation.
double dirac_bracket(const PhasePoint& z, const DualObservable& f,
                     const DualObservable& g);

/// Same bracket with central finite-difference partials.
double dirac_bracket_fd(const PhasePoint& z, const ScalarObservable& f,
                        const ScalarObservable& g, double step = 1e-7);

namespace observables {
DualObservable xi();
DualObservable eta();
DualObservable radius_squared();
/// canonical_hamiltonian as a phase-space function.
DualObservable hamiltonian(const ModelParams& params);
}  // namespace observables

}  // namespace vortexlab
