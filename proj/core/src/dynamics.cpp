#include "vortexlab/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vortexlab/errors.hpp"

namespace vortexlab {
namespace {

double checked_denominator(const ModelParams& params, const VortexState& q) {
  const double d = common_denominator(params, q);
  if (!(d > 0.0)) {
    std::ostringstream msg;
    msg << "common denominator D = " << d << " is not positive";
    throw Error(ErrorKind::DegenerateDenominator, msg.str());
  }
  return d;
}

Eigen::Vector4d to_eigen(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

Vec4 to_vec4(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }

}  // namespace

Vec4 kinetic_coefficients(const ModelParams& params, const VortexState& q) {
  const auto& c = params.coefficients();
  const double d = checked_denominator(params, q);
  const double inv_alpha = 1.0 / params.alpha();
  const double a1 = inv_alpha + q.X1 * q.X1 + q.Y1 * q.Y1;
  const double a2 = inv_alpha + q.X2 * q.X2 + q.Y2 * q.Y2;
  return {c.E * a2 * q.Y1 / d, -c.E * a2 * q.X1 / d, c.Gamma * a1 * q.Y2 / d,
          -c.Gamma * a1 * q.X2 / d};
}

Eigen::Matrix4d kinetic_jacobian(const ModelParams& params, const VortexState& q) {
  const auto& c = params.coefficients();
  const double d = checked_denominator(params, q);
  const Vec4 grad_d = denominator_gradient(params, q);
  const double inv_alpha = 1.0 / params.alpha();
  const double a1 = inv_alpha + q.X1 * q.X1 + q.Y1 * q.Y1;
  const double a2 = inv_alpha + q.X2 * q.X2 + q.Y2 * q.Y2;
  const double E = c.E;
  const double G = c.Gamma;

  // Numerators n_j of a_j = n_j / D and their partials dn(i, j) = d n_j / d q_i.
  const Vec4 n{E * a2 * q.Y1, -E * a2 * q.X1, G * a1 * q.Y2, -G * a1 * q.X2};
  Eigen::Matrix4d dn;
  dn << 0.0, -E * a2, 2.0 * G * q.X1 * q.Y2, -2.0 * G * q.X1 * q.X2,
      E * a2, 0.0, 2.0 * G * q.Y1 * q.Y2, -2.0 * G * q.Y1 * q.X2,
      2.0 * E * q.X2 * q.Y1, -2.0 * E * q.X2 * q.X1, 0.0, -G * a1,
      2.0 * E * q.Y2 * q.Y1, -2.0 * E * q.Y2 * q.X1, G * a1, 0.0;

  Eigen::Matrix4d j;
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      j(i, k) = dn(i, k) / d - n[k] * grad_d[i] / (d * d);
    }
  }
  return j;
}

double potential_v(const ModelParams& params, const VortexState& q) {
  return reduced_hamiltonian(params, q);
}

Vec4 potential_gradient(const ModelParams& params, const VortexState& q) {
  const auto& c = params.coefficients();
  const double d = checked_denominator(params, q);
  const Vec4 grad_d = denominator_gradient(params, q);
  const Vec4 coords = q.to_array();
  const double s = 2.0 / params.alpha() + q.X1 * q.X1 + q.Y1 * q.Y1 + q.X2 * q.X2 + q.Y2 * q.Y2;
  Vec4 grad{};
  for (int i = 0; i < 4; ++i) {
    grad[i] = 0.5 * c.Lambda * (2.0 * coords[i] * d - s * grad_d[i]) / (d * d);
  }
  return grad;
}

SymplecticForm symplectic_form(const ModelParams& params, const VortexState& q) {
  const Eigen::Matrix4d j = kinetic_jacobian(params, q);
  return {j - j.transpose()};
}

VortexFlow::VortexFlow(const ModelParams& params, FlowOptions options)
    : params_(params), options_(options) {
  const auto& c = params_.coefficients();
  const double weight = std::min(std::abs(c.E), std::abs(c.Gamma)) / c.Lambda;
  if (weight < options_.kinetic_floor) {
    std::ostringstream msg;
    msg << "degenerate kinetics near lambda = 1/2: lambda = " << params_.lambda()
        << ", min(|E|,|Gamma|)/Lambda = " << weight << " below floor "
        << options_.kinetic_floor;
    throw Error(ErrorKind::SingularSymplecticForm, msg.str());
  }
}

VortexVelocity VortexFlow::velocity(const VortexState& q) const {
  const Eigen::Matrix4d f = symplectic_form(params_, q).F;
  const Eigen::PartialPivLU<Eigen::Matrix4d> lu(f);
  const double det = lu.determinant();
  const double norm = f.norm();
  if (!(std::abs(det) >= options_.det_rel_threshold * std::pow(norm, 4)) || norm == 0.0) {
    std::ostringstream msg;
    msg << "symplectic form is singular at (" << q.X1 << ", " << q.Y1 << ", " << q.X2
        << ", " << q.Y2 << ") for lambda = " << params_.lambda() << ": |det F| = "
        << std::abs(det) << ", ||F||^4 = " << std::pow(norm, 4);
    throw Error(ErrorKind::SingularSymplecticForm, msg.str());
  }
  const Eigen::Vector4d rhs = to_eigen(potential_gradient(params_, q));
  return VortexVelocity::from_array(to_vec4(lu.solve(rhs)));
}

VortexVelocity velocity_field(const ModelParams& params, const VortexState& q,
                              FlowOptions options) {
  return VortexFlow(params, options).velocity(q);
}

double Trajectory::max_abs_energy_drift() const noexcept {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, std::abs(d.energy_drift));
  return m;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// Difference between the 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

using V = Eigen::Vector4d;

StepDiagnostics diagnose(const ModelParams& params, const VortexState& q, double h0,
                         double step) {
  const double h = reduced_hamiltonian(params, q);
  const auto s = angular_momenta(params, q);
  return {h, s.s1, s.s2, (h - h0) / std::abs(h0), step};
}

}  // namespace

Trajectory integrate(const ModelParams& params, const VortexState& state0, double t_end,
                     const IntegratorOptions& options) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::InvalidParams, "t_end must be positive and finite");
  }
  const VortexFlow flow(params, options.flow);
  const double sign = options.reverse_time ? -1.0 : 1.0;

  Trajectory traj;
  auto rhs = [&](const V& y) -> V {
    ++traj.stats.rhs_evaluations;
    const auto v = flow.velocity(VortexState::from_array(to_vec4(y)));
    return sign * to_eigen(v.to_array());
  };

  const double h0_energy = reduced_hamiltonian(params, state0);
  traj.times.push_back(0.0);
  traj.states.push_back(state0);
  traj.diagnostics.push_back(diagnose(params, state0, h0_energy, 0.0));

  const double min_step = 1e-14 * t_end;
  double h = options.initial_step > 0.0 ? options.initial_step : t_end / 1000.0;
  double t = 0.0;
  V y = to_eigen(state0.to_array());
  V k1 = rhs(y);

  while (t < t_end) {
    if (traj.stats.accepted + traj.stats.rejected >= options.max_steps) {
      throw Error(ErrorKind::StepSizeUnderflow, "integrator exceeded max_steps");
    }
    bool last = false;
    if (t + h >= t_end) {
      h = t_end - t;
      last = true;
    }

    const V k2 = rhs(y + h * (a21 * k1));
    const V k3 = rhs(y + h * (a31 * k1 + a32 * k2));
    const V k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const V k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const V k6 = rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const V y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const V k7 = rhs(y_new);
    const V err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err_norm = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double scale =
          options.atol + options.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err_norm += (err[i] / scale) * (err[i] / scale);
    }
    err_norm = std::sqrt(err_norm / 4.0);

    if (err_norm <= 1.0) {
      t = last ? t_end : t + h;
      y = y_new;
      k1 = k7;  // first-same-as-last
      ++traj.stats.accepted;
      const auto q = VortexState::from_array(to_vec4(y));
      traj.times.push_back(t);
      traj.states.push_back(q);
      traj.diagnostics.push_back(diagnose(params, q, h0_energy, h));
      const double factor =
          err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
      h *= factor;
    } else {
      ++traj.stats.rejected;
      h *= std::clamp(0.9 * std::pow(err_norm, -0.2), 0.1, 1.0);
      if (!std::isfinite(err_norm)) h *= 0.1;
    }
    if (t < t_end && h < min_step) {
      std::ostringstream msg;
      msg << "step size " << h << " underflowed at t = " << t;
      throw Error(ErrorKind::StepSizeUnderflow, msg.str());
    }
  }
  return traj;
}

namespace {

struct ProjectedFit {
  double residual2 = 0.0;
  Eigen::Vector3d coeffs = Eigen::Vector3d::Zero();
};

ProjectedFit project(const std::vector<double>& t, const std::vector<double>& x,
                     double omega) {
  Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Eigen::Vector3d basis(1.0, std::cos(omega * t[i]), std::sin(omega * t[i]));
    normal.noalias() += basis * basis.transpose();
    rhs += basis * x[i];
  }
  ProjectedFit fit;
  fit.coeffs = normal.ldlt().solve(rhs);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double model = fit.coeffs[0] + fit.coeffs[1] * std::cos(omega * t[i]) +
                         fit.coeffs[2] * std::sin(omega * t[i]);
    fit.residual2 += (x[i] - model) * (x[i] - model);
  }
  return fit;
}

}  // namespace

SinusoidFit fit_sinusoid(const std::vector<double>& times,
                         const std::vector<double>& values) {
  if (times.size() != values.size() || times.size() < 8) {
    throw Error(ErrorKind::InvalidParams, "sinusoid fit needs matching samples (>= 8)");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());

  std::vector<double> crossings;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double a = values[i - 1] - mean;
    const double b = values[i] - mean;
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      crossings.push_back(times[i - 1] + (times[i] - times[i - 1]) * a / (a - b));
    }
  }
  if (crossings.size() < 3) {
    throw Error(ErrorKind::InvalidParams, "sinusoid fit needs at least one full period");
  }
  const double span = crossings.back() - crossings.front();
  const double omega0 =
      std::numbers::pi * static_cast<double>(crossings.size() - 1) / span;

  // Golden-section search inside the main lobe of the projected residual.
  const double half_width = std::numbers::pi / (times.back() - times.front());
  double lo = omega0 - half_width;
  double hi = omega0 + half_width;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double m1 = hi - inv_phi * (hi - lo);
  double m2 = lo + inv_phi * (hi - lo);
  double f1 = project(times, values, m1).residual2;
  double f2 = project(times, values, m2).residual2;
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * omega0; ++it) {
    if (f1 < f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - inv_phi * (hi - lo);
      f1 = project(times, values, m1).residual2;
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + inv_phi * (hi - lo);
      f2 = project(times, values, m2).residual2;
    }
  }
  const double omega = 0.5 * (lo + hi);
  const auto best = project(times, values, omega);
  return {omega, best.coeffs[0], best.coeffs[1], best.coeffs[2],
          std::sqrt(best.residual2 / static_cast<double>(times.size()))};
}

AntisymmetricReport antisymmetric_subspace_diagnostic(const ModelParams& params,
                                                      const VortexState& state0,
                                                      double t_end,
                                                      const IntegratorOptions& options) {
  const double scale = 1.0 + std::abs(state0.X1) + std::abs(state0.Y1);
  if (std::abs(state0.X2 + state0.X1) > 1e-12 * scale ||
      std::abs(state0.Y2 + state0.Y1) > 1e-12 * scale) {
    throw Error(ErrorKind::InvalidParams,
                "antisymmetric diagnostic needs (X2, Y2) = (-X1, -Y1)");
  }
  const auto& c = params.coefficients();
  AntisymmetricReport report;
  report.e_equals_minus_gamma = std::abs(c.E + c.Gamma) <= 1e-14;

  try {
    const auto traj = integrate(params, state0, t_end, options);
    report.completed = true;
    report.t_reached = traj.times.back();
    for (const auto& q : traj.states) {
      report.max_subspace_drift =
          std::max(report.max_subspace_drift, std::hypot(q.X2 + q.X1, q.Y2 + q.Y1));
      const double disp = std::sqrt(
          (q.X1 - state0.X1) * (q.X1 - state0.X1) + (q.Y1 - state0.Y1) * (q.Y1 - state0.Y1) +
          (q.X2 - state0.X2) * (q.X2 - state0.X2) + (q.Y2 - state0.Y2) * (q.Y2 - state0.Y2));
      report.max_displacement = std::max(report.max_displacement, disp);
    }
    report.max_abs_energy_drift = traj.max_abs_energy_drift();
  } catch (const Error& e) {
    report.completed = false;
    report.failure = std::string(to_string(e.kind())) + ": " + e.what();
  }
  report.subspace_invariant = report.completed && report.max_subspace_drift < 1e-8;
  report.is_static = report.completed && report.max_displacement < 1e-8;
  return report;
}

}  // namespace vortexlab
