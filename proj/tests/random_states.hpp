#pragma once

#include <random>

#include "vortexlab/model.hpp"

namespace vortexlab::testing {

// Deterministic draws shared by the test binaries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  VortexState state(double box = 2.0) {
    return {uniform(-box, box), uniform(-box, box), uniform(-box, box), uniform(-box, box)};
  }

  VortexVelocity velocity(double scale = 1.0) {
    return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale),
            uniform(-scale, scale)};
  }

  double alpha_choice() { return uniform(0.0, 1.0) < 0.5 ? 1.0 : 10.0; }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace vortexlab::testing
