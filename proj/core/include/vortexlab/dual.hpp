#pragma once

// Forward-mode dual numbers carrying a fixed-size gradient. Enough
// arithmetic to write phase-space observables as ordinary expressions and
// read back exact first partials.

#include <array>
#include <cmath>
#include <cstddef>

namespace vortexlab {

template <std::size_t N>
struct Dual {
  double value = 0.0;
  std::array<double, N> grad{};

  Dual() = default;
  Dual(double v) : value(v) {}  // NOLINT(google-explicit-constructor)
  Dual(double v, const std::array<double, N>& g) : value(v), grad(g) {}

  static Dual variable(double v, std::size_t index) {
    Dual d(v);
    d.grad[index] = 1.0;
    return d;
  }

  Dual& operator+=(const Dual& o) {
    value += o.value;
    for (std::size_t i = 0; i < N; ++i) grad[i] += o.grad[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    value -= o.value;
    for (std::size_t i = 0; i < N; ++i) grad[i] -= o.grad[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (std::size_t i = 0; i < N; ++i) grad[i] = grad[i] * o.value + value * o.grad[i];
    value *= o.value;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.value;
    for (std::size_t i = 0; i < N; ++i) {
      grad[i] = (grad[i] * o.value - value * o.grad[i]) * inv * inv;
    }
    value *= inv;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend Dual operator-(Dual a) {
    a.value = -a.value;
    for (auto& g : a.grad) g = -g;
    return a;
  }
};

namespace detail {
template <std::size_t N>
Dual<N> chain(const Dual<N>& x, double f, double df) {
  Dual<N> r(f);
  for (std::size_t i = 0; i < N; ++i) r.grad[i] = df * x.grad[i];
  return r;
}
}  // namespace detail

template <std::size_t N>
Dual<N> sqrt(const Dual<N>& x) {
  const double s = std::sqrt(x.value);
  return detail::chain(x, s, 0.5 / s);
}

template <std::size_t N>
Dual<N> exp(const Dual<N>& x) {
  const double e = std::exp(x.value);
  return detail::chain(x, e, e);
}

template <std::size_t N>
Dual<N> log(const Dual<N>& x) {
  return detail::chain(x, std::log(x.value), 1.0 / x.value);
}

template <std::size_t N>
Dual<N> sin(const Dual<N>& x) {
  return detail::chain(x, std::sin(x.value), std::cos(x.value));
}

template <std::size_t N>
Dual<N> cos(const Dual<N>& x) {
  return detail::chain(x, std::cos(x.value), -std::sin(x.value));
}

}  // namespace vortexlab
