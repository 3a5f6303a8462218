#include "vortexlab/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>
#include <utility>

#include "vortexlab/errors.hpp"

namespace vortexlab {
namespace {

QuadratureRule build_rule(int n, double alpha) {
  // Jacobi matrix of the monic Hermite recurrence for exp(-t^2):
  // zero diagonal, off-diagonal sqrt(k / 2).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  const double mu0 = std::sqrt(std::numbers::pi);
  const double inv_sqrt_alpha = 1.0 / std::sqrt(alpha);

  QuadratureRule rule;
  rule.order = n;
  rule.scaling = alpha;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[i] = solver.eigenvalues()[i] * inv_sqrt_alpha;
    rule.weights[i] = mu0 * v0 * v0 * inv_sqrt_alpha;
  }
  // Symmetrize to remove eigen-solver asymmetry in the last digits.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

class RuleCache {
 public:
  const QuadratureRule& get(int n, double alpha) {
    const auto key = std::make_pair(n, alpha);
    {
      std::shared_lock lock(mutex_);
      if (auto it = rules_.find(key); it != rules_.end()) return *it->second;
    }
    auto rule = std::make_unique<QuadratureRule>(build_rule(n, alpha));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = rules_.try_emplace(key, std::move(rule));
    return *it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::pair<int, double>, std::unique_ptr<const QuadratureRule>> rules_;
};

RuleCache& cache() {
  static RuleCache instance;
  return instance;
}

// Calls fn(r1, r2, weight) at every tensor node, where weight already
// contains the inverse Gaussian factor so fn returns the bare integrand.
template <typename Fn>
void for_each_node(const QuadratureRule& rule, Fn&& fn) {
  const int n = rule.order;
  const double a = rule.scaling;
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = rule.weights[i] * std::exp(a * rule.nodes[i] * rule.nodes[i]);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Point2 r1{rule.nodes[i], rule.nodes[j]};
      const double w1 = w[i] * w[j];
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          fn(r1, Point2{rule.nodes[k], rule.nodes[l]}, w1 * w[k] * w[l]);
        }
      }
    }
  }
}

}  // namespace

const QuadratureRule& gauss_hermite_rule(int n, double alpha) {
  if (n < 1 || n > 64) {
    std::ostringstream msg;
    msg << "quadrature order " << n << " outside [1, 64]";
    throw Error(ErrorKind::OrderOutOfRange, msg.str());
  }
  if (!(alpha > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "quadrature scaling alpha must be positive");
  }
  return cache().get(n, alpha);
}

double norm_quadrature(const ModelParams& params, const VortexState& q, int n,
                       double amplitude_scale) {
  const auto& rule = gauss_hermite_rule(n, params.alpha());
  double sum = 0.0;
  for_each_node(rule, [&](Point2 r1, Point2 r2, double w) {
    sum += w * std::norm(amplitude_scale * ansatz_value(params, q, r1, r2));
  });
  return sum;
}

Complex lagrangian_quadrature(const ModelParams& params, const VortexState& q,
                              const VortexVelocity& v, int n) {
  const auto& rule = gauss_hermite_rule(n, params.alpha());
  const Complex i(0.0, 1.0);
  Complex sum{};
  for_each_node(rule, [&](Point2 r1, Point2 r2, double w) {
    const Complex phi = ansatz_value(params, q, r1, r2);
    const Complex dt = ansatz_time_derivative(params, q, v, r1, r2);
    const Complex lap = ansatz_laplacian(params, q, r1, r2);
    sum += w * std::conj(phi) * (i * dt + 0.5 * lap);
  });
  return sum;
}

double kinetic_energy_quadrature(const ModelParams& params, const VortexState& q, int n) {
  const auto& rule = gauss_hermite_rule(n, params.alpha());
  Complex sum{};
  for_each_node(rule, [&](Point2 r1, Point2 r2, double w) {
    sum += w * std::conj(ansatz_value(params, q, r1, r2)) * ansatz_laplacian(params, q, r1, r2);
  });
  return -0.5 * sum.real();
}

OverlapQuadrature overlap_quadrature(const ModelParams& params, const VortexState& q,
                                     int n) {
  const auto& rule = gauss_hermite_rule(n, params.alpha());
  auto orbital = [](double x, double y, double cx, double cy, int s) {
    return Complex(x - cx, s * (y - cy));
  };
  // The product of two orbitals carries exp(-alpha r^2) which is exactly
  // the 2-D weight, so the bare polynomial product is integrated.
  OverlapQuadrature out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = rule.nodes[i];
      const double y = rule.nodes[j];
      const double w = rule.weights[i] * rule.weights[j];
      const std::array<Complex, 2> ea{orbital(x, y, q.X1, q.Y1, params.eps1()),
                                      orbital(x, y, q.X1, q.Y1, params.eps2())};
      const std::array<Complex, 2> eb{orbital(x, y, q.X2, q.Y2, params.gamma2()),
                                      orbital(x, y, q.X2, q.Y2, params.gamma1())};
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          out.S_A(r, c) += w * std::conj(ea[r]) * ea[c];
          out.S_B(r, c) += w * std::conj(eb[r]) * eb[c];
        }
      }
    }
  }
  return out;
}

}  // namespace vortexlab
