#include "vortexlab/entanglement.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vortexlab/errors.hpp"

namespace vortexlab {
namespace {

constexpr double kClampWindow = 1e-12;

// <s_i|s_j> for orbitals (x - X) + i s (y - Y) with Gaussian envelope and
// opposite signs s_j = -s_i.
Complex cross_overlap(double alpha, double X, double Y, int s_i) {
  return (std::numbers::pi / alpha) * Complex(X * X - Y * Y, -2.0 * s_i * X * Y);
}

Eigen::Matrix2cd gram(double alpha, double X, double Y, int s0) {
  const double diag = (std::numbers::pi / alpha) * (1.0 / alpha + X * X + Y * Y);
  const Complex off = cross_overlap(alpha, X, Y, s0);
  Eigen::Matrix2cd s;
  s << diag, off, std::conj(off), diag;
  return s;
}

// Principal square root of a 2x2 Hermitian positive semidefinite matrix:
// sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
Eigen::Matrix2cd psd_sqrt(const Eigen::Matrix2cd& m) {
  const double det = std::max(0.0, m.determinant().real());
  const double s = std::sqrt(det);
  const double t = std::sqrt(std::max(0.0, m.trace().real() + 2.0 * s));
  if (t == 0.0) return Eigen::Matrix2cd::Zero();
  return (m + s * Eigen::Matrix2cd::Identity()) / t;
}

// Eigenvalues of a reduced density operator A M A^dagger with Gram matrix
// S = A^dagger A, from T = S^{1/2} M S^{1/2}. det T is taken as
// det S * det M so a rank-one M yields an exactly zero eigenvalue.
GramSpectrum spectrum(const Eigen::Matrix2cd& s, const Eigen::Matrix2cd& m,
                      double det_m) {
  GramSpectrum out;
  const Eigen::Matrix2cd root = psd_sqrt(s);
  out.T = root * m * root;
  const double tr = out.T.trace().real();
  const double det = s.determinant().real() * det_m;
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  const double big = 0.5 * (tr + disc);
  const double small = big > 0.0 ? det / big : 0.0;
  double p_plus = big / tr;
  double p_minus = small / tr;
  if (p_minus < -kClampWindow) {
    std::ostringstream msg;
    msg << "reduced density eigenvalue " << p_minus << " is negative";
    throw Error(ErrorKind::NumericalRankLoss, msg.str());
  }
  p_minus = std::max(0.0, p_minus);
  if (p_minus > p_plus) std::swap(p_minus, p_plus);
  out.p_plus = p_plus;
  out.p_minus = p_minus;
  out.entropy = von_neumann_entropy(p_plus, p_minus);
  return out;
}

Eigen::Matrix2cd coefficient_matrix(double lambda) {
  Eigen::Matrix2cd c = Eigen::Matrix2cd::Zero();
  c(0, 0) = lambda;
  c(1, 1) = 1.0 - lambda;
  return c;
}

}  // namespace

OverlapMatrices overlap_matrices(const ModelParams& params, const VortexState& q) {
  return {gram(params.alpha(), q.X1, q.Y1, params.eps1()),
          gram(params.alpha(), q.X2, q.Y2, params.gamma2())};
}

ReducedDensity reduced_density_orthogonal(const ModelParams& params, const VortexState& q) {
  const double n = normalization_factor(params, q);
  const double l = params.lambda();
  const double a = params.alpha();
  const double pref = n * n * std::numbers::pi / a;
  const double a_2 = 1.0 / a + q.X2 * q.X2 + q.Y2 * q.Y2;

  ReducedDensity rd;
  rd.a1 = pref * l * l * a_2;
  rd.a2 = pref * (1.0 - l) * (1.0 - l) * a_2;
  rd.b = pref * l * (1.0 - l) *
         Complex(q.X2 * q.X2 - q.Y2 * q.Y2,
                 -static_cast<double>(params.gamma1() - params.gamma2()) * q.X2 * q.Y2);
  const auto ov = overlap_matrices(params, q);
  rd.S_A = ov.S_A;
  rd.S_B = ov.S_B;

  const double disc = std::sqrt((rd.a1 - rd.a2) * (rd.a1 - rd.a2) + 4.0 * std::norm(rd.b));
  const double p_plus = 0.5 * (rd.a1 + rd.a2 + disc);
  const double p_minus = 0.5 * (rd.a1 + rd.a2 - disc);
  const double trace = p_plus + p_minus;
  rd.p_plus = p_plus / trace;
  rd.p_minus = std::max(0.0, p_minus / trace);
  return rd;
}

double von_neumann_entropy(double p_plus, double p_minus) noexcept {
  double s = 0.0;
  for (double p : {p_plus, p_minus}) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double entropy_orthogonal(const ModelParams& params, const VortexState& q) {
  const auto rd = reduced_density_orthogonal(params, q);
  return von_neumann_entropy(rd.p_plus, rd.p_minus);
}

GramSpectrum gram_spectrum(const ModelParams& params, const VortexState& q) {
  const auto ov = overlap_matrices(params, q);
  const double l = params.lambda();
  const Eigen::Matrix2cd c = coefficient_matrix(l);
  const Eigen::Matrix2cd m = c * ov.S_B.transpose() * c.adjoint();
  const double det_m = l * l * (1.0 - l) * (1.0 - l) * ov.S_B.determinant().real();
  return spectrum(ov.S_A, m, det_m);
}

double entropy_gram(const ModelParams& params, const VortexState& q) {
  return gram_spectrum(params, q).entropy;
}

SubsystemEntropies entropy_subsystem_equality(const ModelParams& params,
                                              const VortexState& q) {
  const auto ov = overlap_matrices(params, q);
  const double l = params.lambda();
  const Eigen::Matrix2cd c = coefficient_matrix(l);
  const double det_c2 = l * l * (1.0 - l) * (1.0 - l);

  const Eigen::Matrix2cd m_psi = c * ov.S_B.transpose() * c.adjoint();
  const Eigen::Matrix2cd m_phi = c * ov.S_A.transpose() * c.adjoint();
  const double s_psi = spectrum(ov.S_A, m_psi, det_c2 * ov.S_B.determinant().real()).entropy;
  const double s_phi = spectrum(ov.S_B, m_phi, det_c2 * ov.S_A.determinant().real()).entropy;
  return {s_psi, s_phi, s_psi - s_phi};
}

std::vector<double> default_lambda_grid() {
  constexpr int kPoints = 200;
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) grid[i] = 0.499 * i / (kPoints - 1);
  return grid;
}

EntropySweep entropy_sweep(const ModelParams& params_base, const VortexState& q,
                           const std::vector<double>& lambda_grid) {
  if (lambda_grid.size() < 2) {
    throw Error(ErrorKind::InvalidParams, "entropy sweep needs at least two lambda values");
  }
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    if (lambda_grid[i] < 0.0 || lambda_grid[i] >= 0.5 ||
        (i > 0 && lambda_grid[i] <= lambda_grid[i - 1])) {
      throw Error(ErrorKind::InvalidParams,
                  "lambda grid must be strictly increasing within [0, 1/2)");
    }
  }

  EntropySweep sweep;
  sweep.rows.reserve(lambda_grid.size());
  for (double l : lambda_grid) {
    const auto p = ModelParams::create(l, params_base.alpha(), params_base.eps1(),
                                       params_base.eps2(), params_base.gamma1(),
                                       params_base.gamma2());
    EntropySweepRow row;
    row.lambda = l;
    row.S_orthogonal = entropy_orthogonal(p, q);
    row.S_gram = entropy_gram(p, q);
    row.difference = row.S_gram - row.S_orthogonal;
    sweep.rows.push_back(row);
  }

  // Forward differences, backward at the last point; the fit uses the
  // interval midpoints so each derivative sits where it is accurate.
  const std::size_t n = sweep.rows.size();
  std::vector<double> mid_l;
  std::vector<double> mid_d;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = (sweep.rows[i + 1].S_gram - sweep.rows[i].S_gram) /
                     (sweep.rows[i + 1].lambda - sweep.rows[i].lambda);
    sweep.rows[i].dS_dlambda = d;
    mid_l.push_back(0.5 * (sweep.rows[i].lambda + sweep.rows[i + 1].lambda));
    mid_d.push_back(d);
  }
  sweep.rows[n - 1].dS_dlambda = sweep.rows[n - 2].dS_dlambda;

  // Straight-line fit of the derivative over the upper quarter of the grid
  // (at least the last two intervals).
  const double l_max = lambda_grid.back();
  const double cutoff = lambda_grid.front() + 0.75 * (l_max - lambda_grid.front());
  std::size_t first = 0;
  while (first < mid_l.size() && mid_l[first] < cutoff) ++first;
  first = std::min(first, mid_l.size() >= 2 ? mid_l.size() - 2 : std::size_t{0});

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double count = static_cast<double>(mid_l.size() - first);
  for (std::size_t i = first; i < mid_l.size(); ++i) {
    sx += mid_l[i];
    sy += mid_d[i];
    sxx += mid_l[i] * mid_l[i];
    sxy += mid_l[i] * mid_d[i];
  }
  const double denom = count * sxx - sx * sx;
  sweep.stationary_point = l_max;
  if (count >= 2.0 && denom != 0.0) {
    const double slope = (count * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / count;
    sweep.fit_slope = slope;
    if (slope != 0.0) sweep.stationary_point = -intercept / slope;
  }
  return sweep;
}

}  // namespace vortexlab
