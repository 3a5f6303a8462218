#include "cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "vortexlab/errors.hpp"

namespace vortexlab::cli {
namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Mark& mark, const std::string& what) const {
    std::ostringstream msg;
    msg << source_;
    if (!mark.is_null()) msg << ':' << mark.line + 1 << ':' << mark.column + 1;
    msg << ": " << what;
    throw ConfigError(msg.str());
  }

  // Rejects keys outside `allowed` and returns the table node.
  void check_table(const YAML::Node& node, const std::string& name,
                   const std::set<std::string>& allowed) const {
    if (!node.IsMap()) fail(node.Mark(), "'" + name + "' must be a table");
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) {
        fail(kv.first.Mark(), "unknown key '" + key + "' in table '" + name + "'");
      }
    }
  }

  template <typename T>
  void read(const YAML::Node& table, const std::string& table_name, const char* key,
            T& out) const {
    const YAML::Node node = table[key];
    if (!node) return;
    try {
      out = node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node.Mark(), "field '" + table_name + "." + key + "' has the wrong type");
    }
  }

  std::vector<double> read_list(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) fail(node.Mark(), "field '" + field + "' must be a list");
    std::vector<double> out;
    for (const auto& item : node) {
      try {
        out.push_back(item.as<double>());
      } catch (const YAML::Exception&) {
        fail(item.Mark(), "field '" + field + "' must contain numbers");
      }
    }
    return out;
  }

  template <typename T, typename Pred>
  void require(const YAML::Node& root, const std::string& path, const T& value, Pred ok,
               const std::string& rule) const {
    if (ok(value)) return;
    YAML::Mark mark = YAML::Mark::null_mark();
    const auto dot = path.find('.');
    if (dot != std::string::npos) {
      const YAML::Node table = root[path.substr(0, dot)];
      if (table && table.IsMap() && table[path.substr(dot + 1)]) {
        mark = table[path.substr(dot + 1)].Mark();
      }
    }
    fail(mark, "field '" + path + "' " + rule);
  }

 private:
  std::string source_;
};

}  // namespace

ModelParams RunConfig::model() const { return model_at(params.lambda); }

ModelParams RunConfig::model_at(double lambda) const {
  return ModelParams::create(lambda, params.alpha, params.eps1, params.eps2, params.gamma1,
                             params.gamma2);
}

IntegratorOptions RunConfig::integrator_options() const {
  IntegratorOptions o;
  o.rtol = integrator.rtol;
  o.atol = integrator.atol;
  o.initial_step = integrator.initial_step;
  o.max_steps = integrator.max_steps;
  o.flow.det_rel_threshold = integrator.det_threshold;
  o.flow.kinetic_floor = integrator.kinetic_floor;
  return o;
}

RunConfig parse_config(const std::string& text, const std::string& source_name) {
  const Reader r(source_name);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    r.fail(e.mark, "malformed document: " + e.msg);
  }

  RunConfig cfg;
  cfg.source = source_name;
  if (!root || root.IsNull()) return cfg;
  r.check_table(root, "<root>",
                {"params", "initial", "integrator", "sweeps", "validation", "nodes", "output"});

  if (const auto t = root["params"]) {
    r.check_table(t, "params", {"lambda", "alpha", "eps1", "eps2", "gamma1", "gamma2"});
    r.read(t, "params", "lambda", cfg.params.lambda);
    r.read(t, "params", "alpha", cfg.params.alpha);
    r.read(t, "params", "eps1", cfg.params.eps1);
    r.read(t, "params", "eps2", cfg.params.eps2);
    r.read(t, "params", "gamma1", cfg.params.gamma1);
    r.read(t, "params", "gamma2", cfg.params.gamma2);
  }
  if (const auto t = root["initial"]) {
    r.check_table(t, "initial", {"X1", "Y1", "X2", "Y2"});
    r.read(t, "initial", "X1", cfg.initial.X1);
    r.read(t, "initial", "Y1", cfg.initial.Y1);
    r.read(t, "initial", "X2", cfg.initial.X2);
    r.read(t, "initial", "Y2", cfg.initial.Y2);
  }
  if (const auto t = root["integrator"]) {
    r.check_table(t, "integrator", {"t_end", "rtol", "atol", "initial_step", "max_steps",
                                    "det_threshold", "kinetic_floor"});
    auto& s = cfg.integrator;
    r.read(t, "integrator", "t_end", s.t_end);
    r.read(t, "integrator", "rtol", s.rtol);
    r.read(t, "integrator", "atol", s.atol);
    r.read(t, "integrator", "initial_step", s.initial_step);
    r.read(t, "integrator", "max_steps", s.max_steps);
    r.read(t, "integrator", "det_threshold", s.det_threshold);
    r.read(t, "integrator", "kinetic_floor", s.kinetic_floor);
  }
  if (const auto t = root["sweeps"]) {
    r.check_table(t, "sweeps", {"lambda", "alpha", "periods", "amplitude"});
    if (t["lambda"]) cfg.sweeps.lambda = r.read_list(t["lambda"], "sweeps.lambda");
    if (t["alpha"]) cfg.sweeps.alpha = r.read_list(t["alpha"], "sweeps.alpha");
    r.read(t, "sweeps", "periods", cfg.sweeps.periods);
    r.read(t, "sweeps", "amplitude", cfg.sweeps.amplitude);
  }
  if (const auto t = root["validation"]) {
    r.check_table(t, "validation", {"draws", "quadrature_order"});
    r.read(t, "validation", "draws", cfg.validation.draws);
    r.read(t, "validation", "quadrature_order", cfg.validation.quadrature_order);
  }
  if (const auto t = root["nodes"]) {
    r.check_table(t, "nodes", {"box", "cells", "r2"});
    if (t["box"]) {
      const auto b = r.read_list(t["box"], "nodes.box");
      if (b.size() != 4 || !(b[1] > b[0]) || !(b[3] > b[2])) {
        r.fail(t["box"].Mark(), "field 'nodes.box' must be [x_min, x_max, y_min, y_max]");
      }
      cfg.nodes.box = {b[0], b[1], b[2], b[3]};
    }
    if (t["r2"]) {
      const auto p = r.read_list(t["r2"], "nodes.r2");
      if (p.size() != 2) r.fail(t["r2"].Mark(), "field 'nodes.r2' must be [x, y]");
      cfg.nodes.r2 = {p[0], p[1]};
    }
    r.read(t, "nodes", "cells", cfg.nodes.cells);
  }
  if (const auto t = root["output"]) {
    r.check_table(t, "output", {"trajectory", "manifest", "validation", "entropy",
                                "canonical_frequencies", "canonical_trajectories", "nodes"});
    auto& o = cfg.output;
    r.read(t, "output", "trajectory", o.trajectory);
    r.read(t, "output", "manifest", o.manifest);
    r.read(t, "output", "validation", o.validation);
    r.read(t, "output", "entropy", o.entropy);
    r.read(t, "output", "canonical_frequencies", o.canonical_frequencies);
    r.read(t, "output", "canonical_trajectories", o.canonical_trajectories);
    r.read(t, "output", "nodes", o.nodes);
  }

  auto positive = [](double v) { return v > 0.0; };
  r.require(root, "integrator.t_end", cfg.integrator.t_end, positive, "must be positive");
  r.require(root, "integrator.rtol", cfg.integrator.rtol, positive, "must be positive");
  r.require(root, "integrator.atol", cfg.integrator.atol, positive, "must be positive");
  r.require(root, "integrator.initial_step", cfg.integrator.initial_step,
            [](double v) { return v >= 0.0; }, "must be non-negative");
  r.require(root, "integrator.max_steps", cfg.integrator.max_steps,
            [](std::uint64_t v) { return v > 0; }, "must be positive");
  r.require(root, "sweeps.periods", cfg.sweeps.periods, positive, "must be positive");
  r.require(root, "sweeps.amplitude", cfg.sweeps.amplitude, positive, "must be positive");
  r.require(root, "validation.draws", cfg.validation.draws, [](int v) { return v > 0; },
            "must be positive");
  r.require(root, "validation.quadrature_order", cfg.validation.quadrature_order,
            [](int v) { return v >= 3 && v <= 64; }, "must lie in [3, 64]");
  r.require(root, "nodes.cells", cfg.nodes.cells, [](int v) { return v >= 1; },
            "must be at least 1");
  r.require(root, "sweeps.alpha", cfg.sweeps.alpha,
            [](const std::vector<double>& v) {
              if (v.empty()) return false;
              for (double a : v) {
                if (!(a > 0.0)) return false;
              }
              return true;
            },
            "must be a non-empty list of positive values");
  if (cfg.sweeps.lambda) {
    r.require(root, "sweeps.lambda", *cfg.sweeps.lambda,
              [](const std::vector<double>& v) { return !v.empty(); }, "must not be empty");
  }

  try {
    (void)cfg.model();
  } catch (const Error& e) {
    r.fail(root["params"] ? root["params"].Mark() : YAML::Mark::null_mark(),
           std::string("table 'params': ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["params"] = {{"lambda", c.params.lambda}, {"alpha", c.params.alpha},
                 {"eps1", c.params.eps1},     {"eps2", c.params.eps2},
                 {"gamma1", c.params.gamma1}, {"gamma2", c.params.gamma2}};
  j["initial"] = {{"X1", c.initial.X1}, {"Y1", c.initial.Y1},
                  {"X2", c.initial.X2}, {"Y2", c.initial.Y2}};
  j["integrator"] = {{"t_end", c.integrator.t_end},
                     {"rtol", c.integrator.rtol},
                     {"atol", c.integrator.atol},
                     {"initial_step", c.integrator.initial_step},
                     {"max_steps", c.integrator.max_steps},
                     {"det_threshold", c.integrator.det_threshold},
                     {"kinetic_floor", c.integrator.kinetic_floor}};
  j["sweeps"] = {{"lambda", c.sweeps.lambda ? nlohmann::ordered_json(*c.sweeps.lambda)
                                            : nlohmann::ordered_json(nullptr)},
                 {"alpha", c.sweeps.alpha},
                 {"periods", c.sweeps.periods},
                 {"amplitude", c.sweeps.amplitude}};
  j["validation"] = {{"draws", c.validation.draws},
                     {"quadrature_order", c.validation.quadrature_order}};
  j["nodes"] = {{"box", {c.nodes.box.x_min, c.nodes.box.x_max, c.nodes.box.y_min,
                         c.nodes.box.y_max}},
                {"cells", c.nodes.cells},
                {"r2", {c.nodes.r2.x, c.nodes.r2.y}}};
  j["output"] = {{"trajectory", c.output.trajectory},
                 {"manifest", c.output.manifest},
                 {"validation", c.output.validation},
                 {"entropy", c.output.entropy},
                 {"canonical_frequencies", c.output.canonical_frequencies},
                 {"canonical_trajectories", c.output.canonical_trajectories},
                 {"nodes", c.output.nodes}};
  return j;
}

}  // namespace vortexlab::cli
