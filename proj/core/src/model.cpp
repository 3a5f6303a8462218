#include "vortexlab/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vortexlab/errors.hpp"

namespace vortexlab {
namespace {

bool is_sign(int s) { return s == 1 || s == -1; }

double checked_denominator(const ModelParams& params, const VortexState& q) {
  const double d = common_denominator(params, q);
  if (!(d > 0.0)) {
    std::ostringstream msg;
    msg << "common denominator D = " << d << " is not positive";
    throw Error(ErrorKind::DegenerateDenominator, msg.str());
  }
  return d;
}

// Polynomial factors of the four single-particle orbitals, without the
// Gaussian envelope.
struct Orbitals {
  Complex psi1, psi2, phi1, phi2;
};

Orbitals orbitals(const ModelParams& p, const VortexState& q, Point2 r1, Point2 r2) {
  const double u1 = r1.x - q.X1;
  const double v1 = r1.y - q.Y1;
  const double u2 = r2.x - q.X2;
  const double v2 = r2.y - q.Y2;
  return {Complex(u1, p.eps1() * v1), Complex(u1, p.eps2() * v1),
          Complex(u2, p.gamma1() * v2), Complex(u2, p.gamma2() * v2)};
}

double envelope(const ModelParams& p, Point2 r1, Point2 r2) {
  return std::exp(-0.5 * p.alpha() *
                  (r1.x * r1.x + r1.y * r1.y + r2.x * r2.x + r2.y * r2.y));
}

}  // namespace

ModelParams::ModelParams(double lambda, double alpha, int eps1, int eps2,
                         int gamma1, int gamma2)
    : lambda_(lambda),
      alpha_(alpha),
      eps1_(eps1),
      eps2_(eps2),
      gamma1_(gamma1),
      gamma2_(gamma2) {
  const double l = lambda;
  const double m = 1.0 - lambda;
  coeffs_.Lambda = l * l + m * m;
  coeffs_.Upsilon = 2.0 * l * m;
  coeffs_.mu = static_cast<double>((eps1 - eps2) * (gamma1 - gamma2));
  coeffs_.E = l * l * eps1 + m * m * eps2;
  coeffs_.Gamma = l * l * gamma2 + m * m * gamma1;
}

ModelParams ModelParams::create(double lambda, double alpha, int eps1, int eps2,
                                int gamma1, int gamma2) {
  if (!std::isfinite(lambda) || lambda < 0.0 || lambda >= 0.5) {
    std::ostringstream msg;
    msg << "lambda = " << lambda << " outside [0, 1/2)";
    throw Error(ErrorKind::InvalidParams, msg.str());
  }
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " must be positive";
    throw Error(ErrorKind::InvalidParams, msg.str());
  }
  if (!is_sign(eps1) || !is_sign(eps2) || !is_sign(gamma1) || !is_sign(gamma2)) {
    throw Error(ErrorKind::InvalidParams, "vortex signs must be +1 or -1");
  }
  if (eps1 * eps2 != -1 || gamma1 * gamma2 != -1) {
    throw Error(ErrorKind::InvalidParams,
                "vortex signs must satisfy eps1*eps2 = gamma1*gamma2 = -1");
  }
  return ModelParams(lambda, alpha, eps1, eps2, gamma1, gamma2);
}

DerivedCoefficients derived_coefficients(const ModelParams& params) noexcept {
  return params.coefficients();
}

double common_denominator(const ModelParams& params, const VortexState& q) noexcept {
  const auto& c = params.coefficients();
  const double inv_alpha = 1.0 / params.alpha();
  const double a1 = inv_alpha + q.X1 * q.X1 + q.Y1 * q.Y1;
  const double a2 = inv_alpha + q.X2 * q.X2 + q.Y2 * q.Y2;
  const double p1 = q.X1 * q.X1 - q.Y1 * q.Y1;
  const double p2 = q.X2 * q.X2 - q.Y2 * q.Y2;
  return c.Lambda * a1 * a2 + c.Upsilon * (p1 * p2 + c.mu * q.X1 * q.Y1 * q.X2 * q.Y2);
}

Vec4 denominator_gradient(const ModelParams& params, const VortexState& q) noexcept {
  const auto& c = params.coefficients();
  const double inv_alpha = 1.0 / params.alpha();
  const double a1 = inv_alpha + q.X1 * q.X1 + q.Y1 * q.Y1;
  const double a2 = inv_alpha + q.X2 * q.X2 + q.Y2 * q.Y2;
  const double p1 = q.X1 * q.X1 - q.Y1 * q.Y1;
  const double p2 = q.X2 * q.X2 - q.Y2 * q.Y2;
  return {
      2.0 * c.Lambda * q.X1 * a2 + c.Upsilon * (2.0 * q.X1 * p2 + c.mu * q.Y1 * q.X2 * q.Y2),
      2.0 * c.Lambda * q.Y1 * a2 + c.Upsilon * (-2.0 * q.Y1 * p2 + c.mu * q.X1 * q.X2 * q.Y2),
      2.0 * c.Lambda * q.X2 * a1 + c.Upsilon * (2.0 * q.X2 * p1 + c.mu * q.X1 * q.Y1 * q.Y2),
      2.0 * c.Lambda * q.Y2 * a1 + c.Upsilon * (-2.0 * q.Y2 * p1 + c.mu * q.X1 * q.Y1 * q.X2),
  };
}

double normalization_factor(const ModelParams& params, const VortexState& q) {
  const double radicand = common_denominator(params, q);
  if (!(radicand > 0.0)) {
    std::ostringstream msg;
    msg << "normalization radicand " << radicand << " is not positive";
    throw Error(ErrorKind::NonPositiveRadicand, msg.str());
  }
  return params.alpha() / std::numbers::pi / std::sqrt(radicand);
}

Complex ansatz_value(const ModelParams& params, const VortexState& q, Point2 r1,
                     Point2 r2) {
  const double n = normalization_factor(params, q);
  const auto o = orbitals(params, q, r1, r2);
  const double l = params.lambda();
  return n * envelope(params, r1, r2) * (l * o.psi1 * o.phi2 + (1.0 - l) * o.psi2 * o.phi1);
}

Complex ansatz_time_derivative(const ModelParams& params, const VortexState& q,
                               const VortexVelocity& v, Point2 r1, Point2 r2) {
  const double n = normalization_factor(params, q);
  const double d = common_denominator(params, q);
  const Vec4 grad_d = denominator_gradient(params, q);
  const Vec4 vel = v.to_array();

  // dN/dt = -(N / 2D) dD/dt
  double d_dot = 0.0;
  for (int k = 0; k < 4; ++k) d_dot += grad_d[k] * vel[k];
  const double n_dot = -0.5 * n * d_dot / d;

  const auto o = orbitals(params, q, r1, r2);
  const double l = params.lambda();
  const double m = 1.0 - l;
  const Complex poly = l * o.psi1 * o.phi2 + m * o.psi2 * o.phi1;

  // Each orbital is (x - X) + i s (y - Y); its rate is -(dX + i s dY).
  const Complex dpsi1(-v.dX1, -params.eps1() * v.dY1);
  const Complex dpsi2(-v.dX1, -params.eps2() * v.dY1);
  const Complex dphi1(-v.dX2, -params.gamma1() * v.dY2);
  const Complex dphi2(-v.dX2, -params.gamma2() * v.dY2);
  const Complex poly_dot = l * (dpsi1 * o.phi2 + o.psi1 * dphi2) +
                           m * (dpsi2 * o.phi1 + o.psi2 * dphi1);

  return envelope(params, r1, r2) * (n_dot * poly + n * poly_dot);
}

Complex ansatz_laplacian(const ModelParams& params, const VortexState& q, Point2 r1,
                         Point2 r2) {
  const double n = normalization_factor(params, q);
  const double a = params.alpha();
  const double l = params.lambda();
  const double m = 1.0 - l;
  const auto o = orbitals(params, q, r1, r2);
  const Complex poly = l * o.psi1 * o.phi2 + m * o.psi2 * o.phi1;

  // The polynomial factor is linear in each particle's coordinates, so for
  // a single particle nabla^2 (P g) = g [-2 alpha r . nabla P + (alpha^2 r^2 - 2 alpha) P].
  const Complex i(0.0, 1.0);
  const Complex dx1 = l * o.phi2 + m * o.phi1;
  const Complex dy1 = i * (l * double(params.eps1()) * o.phi2 + m * double(params.eps2()) * o.phi1);
  const Complex dx2 = l * o.psi1 + m * o.psi2;
  const Complex dy2 = i * (l * double(params.gamma2()) * o.psi1 + m * double(params.gamma1()) * o.psi2);

  const double rr1 = r1.x * r1.x + r1.y * r1.y;
  const double rr2 = r2.x * r2.x + r2.y * r2.y;
  const Complex lap1 = -2.0 * a * (r1.x * dx1 + r1.y * dy1) + (a * a * rr1 - 2.0 * a) * poly;
  const Complex lap2 = -2.0 * a * (r2.x * dx2 + r2.y * dy2) + (a * a * rr2 - 2.0 * a) * poly;
  return n * envelope(params, r1, r2) * (lap1 + lap2);
}

double reduced_lagrangian(const ModelParams& params, const VortexState& q,
                          const VortexVelocity& v) {
  const auto& c = params.coefficients();
  const double d = checked_denominator(params, q);
  const double inv_alpha = 1.0 / params.alpha();
  const double r1 = q.X1 * q.X1 + q.Y1 * q.Y1;
  const double r2 = q.X2 * q.X2 + q.Y2 * q.Y2;
  const double a1 = inv_alpha + r1;
  const double a2 = inv_alpha + r2;
  const double kinetic = (c.E * a2 * (v.dX1 * q.Y1 - q.X1 * v.dY1) +
                          c.Gamma * a1 * (v.dX2 * q.Y2 - q.X2 * v.dY2)) / d;
  const double potential = 0.5 * c.Lambda * (2.0 * inv_alpha + r1 + r2) / d;
  return kinetic - potential;
}

double reduced_hamiltonian(const ModelParams& params, const VortexState& q) {
  const auto& c = params.coefficients();
  const double d = checked_denominator(params, q);
  const double r1 = q.X1 * q.X1 + q.Y1 * q.Y1;
  const double r2 = q.X2 * q.X2 + q.Y2 * q.Y2;
  return 0.5 * c.Lambda * (2.0 / params.alpha() + r1 + r2) / d;
}

CanonicalMomenta canonical_momenta(const ModelParams& params, const VortexState& q) {
  const auto& c = params.coefficients();
  const double d = checked_denominator(params, q);
  const double inv_alpha = 1.0 / params.alpha();
  const double a1 = inv_alpha + q.X1 * q.X1 + q.Y1 * q.Y1;
  const double a2 = inv_alpha + q.X2 * q.X2 + q.Y2 * q.Y2;
  return {c.E * a2 * q.Y1 / d, -c.E * a2 * q.X1 / d, c.Gamma * a1 * q.Y2 / d,
          -c.Gamma * a1 * q.X2 / d};
}

AngularMomenta angular_momenta(const ModelParams& params, const VortexState& q) {
  const auto p = canonical_momenta(params, q);
  return {q.X1 * p.pY1 - q.Y1 * p.pX1, q.X2 * p.pY2 - q.Y2 * p.pX2};
}

std::string_view to_string(CouplingClass c) noexcept {
  return c == CouplingClass::Ferro ? "Ferro-coupling" : "Antiferro-coupling";
}

Coupling coupling_g(const ModelParams& params, const VortexState& q) {
  const auto& c = params.coefficients();
  const double r1 = q.X1 * q.X1 + q.Y1 * q.Y1;
  const double r2 = q.X2 * q.X2 + q.Y2 * q.Y2;
  if (r1 * r2 == 0.0) {
    throw Error(ErrorKind::OriginSingular,
                "coupling g is singular when a vortex sits at the origin");
  }
  const double e_gamma = c.E * c.Gamma;
  if (e_gamma == 0.0) {
    throw Error(ErrorKind::DegenerateKinetics,
                "coupling g is undefined when E * Gamma = 0 (lambda -> 1/2)");
  }
  const double d = checked_denominator(params, q);
  const double g = -d / (e_gamma * r1 * r2);
  return {g, g < 0.0 ? CouplingClass::Ferro : CouplingClass::Antiferro};
}

double nh_residual(const ModelParams& params, const VortexState& q) {
  const auto& c = params.coefficients();
  const auto coupling = coupling_g(params, q);
  const auto s = angular_momenta(params, q);
  const double spin_form = 0.5 * params.alpha() * c.Lambda *
                           (c.E * s.s1 + c.Gamma * s.s2 - 2.0 * coupling.g * s.s1 * s.s2);
  return spin_form - reduced_hamiltonian(params, q);
}

}  // namespace vortexlab
