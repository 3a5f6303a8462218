#include "vortexlab/canonical.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "vortexlab/errors.hpp"

namespace vortexlab {
namespace {

double positive_e(const ModelParams& params) {
  const double e = params.coefficients().E;
  if (!(e > 0.0)) {
    std::ostringstream msg;
    msg << "canonical transform requires E > 0, got E = " << e;
    throw Error(ErrorKind::NonPositiveE, msg.str());
  }
  return e;
}

// Radial scale f(R) with xi = X f, eta = Y f.
double radial_scale(const ModelParams& params, double e, double r) {
  const double a = params.alpha();
  return std::sqrt(2.0 * a * e / (params.coefficients().Lambda * (1.0 + a * r)));
}

}  // namespace

CanonicalState to_canonical(const ModelParams& params, double X, double Y) {
  const double e = positive_e(params);
  const double f = radial_scale(params, e, X * X + Y * Y);
  return {X * f, Y * f};
}

Point2 from_canonical(const ModelParams& params, const CanonicalState& c) {
  const double e = positive_e(params);
  const double lambda_big = params.coefficients().Lambda;
  const double rho2 = c.xi * c.xi + c.eta * c.eta;
  const double gap = 2.0 * e - lambda_big * rho2;
  if (!(gap > 0.0)) {
    std::ostringstream msg;
    msg << "xi^2 + eta^2 = " << rho2 << " outside the open disc of radius^2 "
        << 2.0 * e / lambda_big;
    throw Error(ErrorKind::DomainViolation, msg.str());
  }
  const double one_plus_alpha_r = 2.0 * e / gap;
  const double inv_f =
      std::sqrt(lambda_big * one_plus_alpha_r / (2.0 * params.alpha() * e));
  return {c.xi * inv_f, c.eta * inv_f};
}

double canonical_jacobian(const ModelParams& params, double X, double Y) {
  const double e = positive_e(params);
  const double s = 1.0 + params.alpha() * (X * X + Y * Y);
  return 2.0 * params.alpha() * e / (params.coefficients().Lambda * s * s);
}

CanonicalVelocity transport_velocity(const ModelParams& params, double X, double Y,
                                     double dX, double dY) {
  const double e = positive_e(params);
  const double r = X * X + Y * Y;
  const double f = radial_scale(params, e, r);
  const double df_dr = -0.5 * params.alpha() * f / (1.0 + params.alpha() * r);
  const double dxi_dx = f + 2.0 * X * X * df_dr;
  const double dxi_dy = 2.0 * X * Y * df_dr;
  const double deta_dy = f + 2.0 * Y * Y * df_dr;
  return {dxi_dx * dX + dxi_dy * dY, dxi_dy * dX + deta_dy * dY};
}

double canonical_lagrangian(const ModelParams& params, const CanonicalState& c,
                            const CanonicalVelocity& v) {
  const auto& k = params.coefficients();
  return 0.5 * (v.dxi * c.eta - c.xi * v.deta) +
         params.alpha() * k.Lambda / (4.0 * k.E) * (c.xi * c.xi + c.eta * c.eta);
}

double canonical_hamiltonian(const ModelParams& params, const CanonicalState& c) {
  const auto& k = params.coefficients();
  return -params.alpha() * k.Lambda * (c.xi * c.xi + c.eta * c.eta) / (4.0 * k.E);
}

double angular_frequency(const ModelParams& params) {
  const double e = positive_e(params);
  return params.alpha() * params.coefficients().Lambda / (2.0 * e);
}

CanonicalState canonical_flow(const ModelParams& params, const CanonicalState& c0,
                              double t) {
  const double theta = angular_frequency(params) * t;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  return {c0.xi * cs - c0.eta * sn, c0.xi * sn + c0.eta * cs};
}

double fixed_vortex_lagrangian(const ModelParams& params, double X, double Y, double dX,
                               double dY) {
  const auto& k = params.coefficients();
  const double a = params.alpha();
  const double s = 1.0 + a * (X * X + Y * Y);
  return k.E * a * (dX * Y - X * dY) / (k.Lambda * s) - a / (2.0 * s);
}

PhasePoint on_constraint_surface(const CanonicalState& c) {
  return {c.xi, 0.5 * c.eta, c.eta, -0.5 * c.xi};
}

double poisson_bracket(const std::array<double, 4>& grad_f,
                       const std::array<double, 4>& grad_g) {
  // Pairs (xi, p_xi) at indices 0, 1 and (eta, p_eta) at 2, 3.
  return grad_f[0] * grad_g[1] - grad_f[1] * grad_g[0] + grad_f[2] * grad_g[3] -
         grad_f[3] * grad_g[2];
}

namespace {

// Constraint gradients are constant: chi_xi = p_xi - eta/2, chi_eta = p_eta + xi/2.
constexpr std::array<double, 4> kGradChiXi{0.0, 1.0, -0.5, 0.0};
constexpr std::array<double, 4> kGradChiEta{0.5, 0.0, 0.0, 1.0};

std::array<PhaseDual, 4> seed(const PhasePoint& z) {
  return {PhaseDual::variable(z[0], 0), PhaseDual::variable(z[1], 1),
          PhaseDual::variable(z[2], 2), PhaseDual::variable(z[3], 3)};
}

std::array<double, 4> fd_gradient(const ScalarObservable& f, const PhasePoint& z,
                                  double step) {
  std::array<double, 4> g{};
  for (std::size_t i = 0; i < 4; ++i) {
    PhasePoint plus = z;
    PhasePoint minus = z;
    const double h = step * std::max(1.0, std::abs(z[i]));
    plus[i] += h;
    minus[i] -= h;
    g[i] = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

double assemble(const PhasePoint& z, const std::array<double, 4>& grad_f,
                const std::array<double, 4>& grad_g) {
  const auto algebra = constraint_algebra(z);
  const Eigen::Vector2d f_chi(poisson_bracket(grad_f, kGradChiXi),
                              poisson_bracket(grad_f, kGradChiEta));
  const Eigen::Vector2d chi_g(poisson_bracket(kGradChiXi, grad_g),
                              poisson_bracket(kGradChiEta, grad_g));
  return poisson_bracket(grad_f, grad_g) - f_chi.dot(algebra.C_inv * chi_g);
}

}  // namespace

ConstraintAlgebra constraint_algebra(const PhasePoint& z) {
  ConstraintAlgebra a;
  a.chi_xi = z[1] - 0.5 * z[2];
  a.chi_eta = z[3] + 0.5 * z[0];
  const std::array<std::array<double, 4>, 2> grads{kGradChiXi, kGradChiEta};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) a.C(i, j) = poisson_bracket(grads[i], grads[j]);
  }
  const double det = a.C.determinant();
  if (std::abs(det) < 1e-12) {
    throw Error(ErrorKind::SingularConstraintMatrix, "constraint matrix is singular");
  }
  a.C_inv = a.C.inverse();
  return a;
}

double dirac_bracket(const PhasePoint& z, const DualObservable& f,
                     const DualObservable& g) {
  const auto vars = seed(z);
  return assemble(z, f(vars).grad, g(vars).grad);
}

double dirac_bracket_fd(const PhasePoint& z, const ScalarObservable& f,
                        const ScalarObservable& g, double step) {
  return assemble(z, fd_gradient(f, z, step), fd_gradient(g, z, step));
}

namespace observables {

DualObservable xi() {
  return [](const std::array<PhaseDual, 4>& z) { return z[0]; };
}

DualObservable eta() {
  return [](const std::array<PhaseDual, 4>& z) { return z[2]; };
}

DualObservable radius_squared() {
  return [](const std::array<PhaseDual, 4>& z) { return z[0] * z[0] + z[2] * z[2]; };
}

DualObservable hamiltonian(const ModelParams& params) {
  const auto& k = params.coefficients();
  const double scale = -params.alpha() * k.Lambda / (4.0 * k.E);
  return [scale](const std::array<PhaseDual, 4>& z) {
    return PhaseDual(scale) * (z[0] * z[0] + z[2] * z[2]);
  };
}

}  // namespace observables

}  // namespace vortexlab
