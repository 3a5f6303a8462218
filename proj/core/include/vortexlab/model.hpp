#pragma once

// Entangled two-vortex trial state and the closed-form reduced quantities
// obtained from it: normalization, reduced Lagrangian and Hamiltonian,
// canonical and angular momenta, and the spin-like coupling coefficient.
//
// Units: hbar = m = 1. Coordinates are lengths, alpha is an inverse length
// squared.

#include <array>
#include <complex>
#include <string_view>

namespace vortexlab {

using Complex = std::complex<double>;
using Vec4 = std::array<double, 4>;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Coefficients fixed by the entanglement parameter and the vortex signs.
struct DerivedCoefficients {
  double Lambda = 0.0;   ///< lambda^2 + (1 - lambda)^2
  double Upsilon = 0.0;  ///< 2 lambda (1 - lambda)
  double mu = 0.0;       ///< (eps1 - eps2)(gamma1 - gamma2), always +-4
  double E = 0.0;        ///< lambda^2 eps1 + (1 - lambda)^2 eps2
  double Gamma = 0.0;    ///< lambda^2 gamma2 + (1 - lambda)^2 gamma1
};

/// Validated model parameters. Construction enforces 0 <= lambda < 1/2,
/// alpha > 0 and eps1 eps2 = gamma1 gamma2 = -1.
///
/// The default signs (eps1, eps2, gamma1, gamma2) = (-1, +1, +1, -1) give
/// E = Gamma = 1 - 2 lambda > 0. alpha sets the width of the Gaussian
/// envelope; the variational picture assumes it is large enough that the
/// packet does not spread, which is why the validation sweeps cover
/// alpha in {1, 10, 100}.
class ModelParams {
 public:
  static ModelParams create(double lambda, double alpha, int eps1 = -1,
                            int eps2 = +1, int gamma1 = +1, int gamma2 = -1);

  double lambda() const noexcept { return lambda_; }
  double alpha() const noexcept { return alpha_; }
  int eps1() const noexcept { return eps1_; }
  int eps2() const noexcept { return eps2_; }
  int gamma1() const noexcept { return gamma1_; }
  int gamma2() const noexcept { return gamma2_; }
  const DerivedCoefficients& coefficients() const noexcept { return coeffs_; }

 private:
  ModelParams(double lambda, double alpha, int eps1, int eps2, int gamma1,
              int gamma2);

  double lambda_;
  double alpha_;
  int eps1_;
  int eps2_;
  int gamma1_;
  int gamma2_;
  DerivedCoefficients coeffs_;
};

/// Collective coordinates of the two nodal points.
struct VortexState {
  double X1 = 0.0;
  double Y1 = 0.0;
  double X2 = 0.0;
  double Y2 = 0.0;

  Vec4 to_array() const noexcept { return {X1, Y1, X2, Y2}; }
  static VortexState from_array(const Vec4& q) noexcept {
    return {q[0], q[1], q[2], q[3]};
  }
};

struct VortexVelocity {
  double dX1 = 0.0;
  double dY1 = 0.0;
  double dX2 = 0.0;
  double dY2 = 0.0;

  Vec4 to_array() const noexcept { return {dX1, dY1, dX2, dY2}; }
  static VortexVelocity from_array(const Vec4& v) noexcept {
    return {v[0], v[1], v[2], v[3]};
  }
};

DerivedCoefficients derived_coefficients(const ModelParams& params) noexcept;

/// D = Lambda A1 A2 + Upsilon [(X1^2 - Y1^2)(X2^2 - Y2^2) + mu X1 Y1 X2 Y2],
/// with A_i = 1/alpha + X_i^2 + Y_i^2. Shared by every reduced quantity.
double common_denominator(const ModelParams& params, const VortexState& q) noexcept;

/// Gradient of common_denominator with respect to (X1, Y1, X2, Y2).
Vec4 denominator_gradient(const ModelParams& params, const VortexState& q) noexcept;

/// N = (alpha / pi) / sqrt(D). Throws NonPositiveRadicand when D <= 0.
double normalization_factor(const ModelParams& params, const VortexState& q);

/// Normalized two-particle amplitude
///   N [lambda psi1(r1) phi2(r2) + (1 - lambda) psi2(r1) phi1(r2)].
Complex ansatz_value(const ModelParams& params, const VortexState& q,
                     Point2 r1, Point2 r2);

/// Exact time derivative of the amplitude when the coordinates move with
/// the given velocity, including the change of the normalization factor.
Complex ansatz_time_derivative(const ModelParams& params, const VortexState& q,
                               const VortexVelocity& v, Point2 r1, Point2 r2);

/// (nabla_1^2 + nabla_2^2) applied to the normalized amplitude.
Complex ansatz_laplacian(const ModelParams& params, const VortexState& q,
                         Point2 r1, Point2 r2);

/// Velocity-linear reduced Lagrangian with the trapping-potential average
/// dropped. Throws DegenerateDenominator when D <= 0.
double reduced_lagrangian(const ModelParams& params, const VortexState& q,
                          const VortexVelocity& v);

/// (Lambda / 2)(2/alpha + R1 + R2) / D, the Legendre transform of the
/// reduced Lagrangian. Always positive.
double reduced_hamiltonian(const ModelParams& params, const VortexState& q);

/// dL/d(velocity). Independent of the velocity since L is linear in it.
struct CanonicalMomenta {
  double pX1 = 0.0;
  double pY1 = 0.0;
  double pX2 = 0.0;
  double pY2 = 0.0;

  Vec4 to_array() const noexcept { return {pX1, pY1, pX2, pY2}; }
};

CanonicalMomenta canonical_momenta(const ModelParams& params, const VortexState& q);

struct AngularMomenta {
  double s1 = 0.0;
  double s2 = 0.0;
};

/// s_i = X_i p_{Y_i} - Y_i p_{X_i}.
AngularMomenta angular_momenta(const ModelParams& params, const VortexState& q);

enum class CouplingClass { Ferro, Antiferro };

std::string_view to_string(CouplingClass c) noexcept;

struct Coupling {
  double g = 0.0;
  CouplingClass classification = CouplingClass::Ferro;  ///< Ferro iff g < 0
};

/// g = -D / (E Gamma R1 R2).
/// Throws OriginSingular when R1 R2 = 0 and DegenerateKinetics when
/// E Gamma = 0.
Coupling coupling_g(const ModelParams& params, const VortexState& q);

/// (alpha Lambda / 2)(E s1 + Gamma s2 - 2 g s1 s2) - H.
///
/// The spin-model form of the Hamiltonian only reproduces H when
/// E^2 = Gamma^2 = 1; otherwise the residual equals
/// (alpha Lambda / 2)(1 - E^2)(A2 R1 + A1 R2) / D. It is reported as a
/// diagnostic and never assumed to vanish.
double nh_residual(const ModelParams& params, const VortexState& q);

}  // namespace vortexlab
