#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vortexlab/dynamics.hpp"
#include "vortexlab/kinematics.hpp"
#include "vortexlab/model.hpp"

namespace vortexlab::cli {

// Raised for unreadable, malformed or inconsistent configuration. The
// message already carries file:line:column when a position is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParamsSection {
  double lambda = 0.0;
  double alpha = 1.0;
  int eps1 = -1;
  int eps2 = +1;
  int gamma1 = +1;
  int gamma2 = -1;
};

struct IntegratorSection {
  double t_end = 100.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.0;
  std::uint64_t max_steps = 50'000'000;
  double det_threshold = 1e-12;
  double kinetic_floor = 1e-2;
};

struct SweepsSection {
  std::optional<std::vector<double>> lambda;  // explicit grid
  std::vector<double> alpha{1.0, 10.0, 100.0};
  double periods = 20.0;      // fitted oscillation length for frequency tests
  double amplitude = 1e-3;    // fixed-vortex initial X for frequency tests
};

struct ValidationSection {
  int draws = 200;
  int quadrature_order = 7;
};

struct NodesSection {
  SearchBox box{-2.0, 2.0, -2.0, 2.0};
  int cells = 256;
  Point2 r2{0.0, 0.0};
};

struct OutputSection {
  std::string trajectory = "trajectory.csv";
  std::string manifest = "manifest.json";
  std::string validation = "validation.json";
  std::string entropy = "entropy.csv";
  std::string canonical_frequencies = "canonical_frequencies.csv";
  std::string canonical_trajectories = "canonical_trajectories.csv";
  std::string nodes = "nodes.csv";
};

struct RunConfig {
  std::string source;  // path the config was read from, empty for defaults
  ParamsSection params;
  VortexState initial{0.1, 0.0, -0.1, 0.0};
  IntegratorSection integrator;
  SweepsSection sweeps;
  ValidationSection validation;
  NodesSection nodes;
  OutputSection output;

  /// Validated model parameters; throws vortexlab::Error(InvalidParams).
  ModelParams model() const;
  /// Validated model parameters at another lambda.
  ModelParams model_at(double lambda) const;
  IntegratorOptions integrator_options() const;
};

/// Parses a YAML document. Unknown keys, wrong types and out-of-range
/// values raise ConfigError naming the file, line and field.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::string& source_name);

nlohmann::ordered_json to_json(const RunConfig& config);

}  // namespace vortexlab::cli
