#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <numbers>
#include <ostream>

#include "cli/format.hpp"
#include "vortexlab/canonical.hpp"
#include "vortexlab/dynamics.hpp"
#include "vortexlab/entanglement.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/kinematics.hpp"

namespace vortexlab::cli {
namespace {

using json = nlohmann::ordered_json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path out_path(const CommandContext& ctx, const std::string& name) {
  return ctx.out_dir / name;
}

const std::vector<double> kCanonicalDefaultGrid{0.0, 0.1, 0.25, 0.4};

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int cmd_simulate(const CommandContext& ctx, std::ostream& log) {
  const auto& cfg = ctx.config;
  const auto params = cfg.model();
  const auto traj = integrate(params, cfg.initial, cfg.integrator.t_end, cfg.integrator_options());

  CsvTable csv;
  csv.header = {"t", "X1", "Y1", "X2", "Y2", "H", "s1", "s2", "energy_drift"};
  csv.rows.reserve(traj.size());
  double s1_drift = 0.0, s2_drift = 0.0;
  const auto& d0 = traj.diagnostics.front();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& q = traj.states[i];
    const auto& d = traj.diagnostics[i];
    csv.rows.push_back({traj.times[i], q.X1, q.Y1, q.X2, q.Y2, d.H, d.s1, d.s2, d.energy_drift});
    s1_drift = std::max(s1_drift, std::abs(d.s1 - d0.s1));
    s2_drift = std::max(s2_drift, std::abs(d.s2 - d0.s2));
  }
  write_csv(out_path(ctx, cfg.output.trajectory), csv);

  json manifest;
  manifest["command"] = "simulate";
  manifest["generated_at"] = utc_timestamp();
  manifest["config"] = to_json(cfg);
  manifest["integrator_stats"] = {{"accepted_steps", traj.stats.accepted},
                                  {"rejected_steps", traj.stats.rejected},
                                  {"rhs_evaluations", traj.stats.rhs_evaluations},
                                  {"samples", traj.size()}};
  manifest["invariants"] = {{"H0", d0.H},
                            {"max_abs_energy_drift", traj.max_abs_energy_drift()},
                            {"max_abs_s1_drift", s1_drift},
                            {"max_abs_s2_drift", s2_drift},
                            {"t_final", traj.times.back()}};
  manifest["outputs"] = {{"trajectory", cfg.output.trajectory}};
  write_text(out_path(ctx, cfg.output.manifest), manifest.dump(2) + "\n");

  log << "simulate: " << traj.size() << " samples, max |energy drift| "
      << format_double(traj.max_abs_energy_drift()) << '\n';
  return kExitOk;
}

int cmd_validate(const CommandContext& ctx, std::ostream& log) {
  json report = run_validation(ctx.config, ctx.seed, ctx.jobs);
  report["generated_at"] = utc_timestamp();
  write_text(out_path(ctx, ctx.config.output.validation), report.dump(2) + "\n");
  int failed = 0;
  for (const auto& check : report["checks"]) {
    log << (check["passed"].get<bool>() ? "PASS " : "FAIL ") << check["name"].get<std::string>()
        << '\n';
    if (!check["passed"].get<bool>()) ++failed;
  }
  log << "validate: " << failed << " failed of " << report["checks"].size() << '\n';
  return report["passed"].get<bool>() ? kExitOk : kExitValidationFailed;
}

int cmd_entropy(const CommandContext& ctx, std::ostream& log) {
  const auto& cfg = ctx.config;
  const auto grid = cfg.sweeps.lambda.value_or(default_lambda_grid());
  const auto sweep = entropy_sweep(cfg.model(), cfg.initial, grid);

  CsvTable csv;
  csv.header = {"lambda", "S_orthogonal", "S_gram", "difference"};
  for (const auto& r : sweep.rows) csv.rows.push_back({r.lambda, r.S_orthogonal, r.S_gram, r.difference});
  json footer = {{"stationary_point", sweep.stationary_point},
                 {"fit_slope", sweep.fit_slope},
                 {"state", {cfg.initial.X1, cfg.initial.Y1, cfg.initial.X2, cfg.initial.Y2}}};
  csv.footer.push_back(footer.dump());
  write_csv(out_path(ctx, cfg.output.entropy), csv);
  log << "entropy: " << sweep.rows.size() << " rows, stationary point "
      << format_double(sweep.stationary_point) << '\n';
  return kExitOk;
}

int cmd_canonical(const CommandContext& ctx, std::ostream& log) {
  const auto& cfg = ctx.config;
  const auto grid = cfg.sweeps.lambda.value_or(kCanonicalDefaultGrid);
  std::vector<ModelParams> models;
  for (double l : grid) models.push_back(cfg.model_at(l));

  struct Result {
    double omega_formula = 0.0;
    double omega_fitted = 0.0;
    double transport_error = 0.0;
    std::vector<std::vector<double>> samples;
  };
  std::vector<Result> results(grid.size());
  parallel_for(grid.size(), ctx.jobs, [&](std::size_t i) {
    const auto& p = models[i];
    Result& r = results[i];
    r.omega_formula = angular_frequency(p);
    const double t_end = cfg.sweeps.periods * 2.0 * std::numbers::pi / r.omega_formula;
    const double x0 = cfg.sweeps.amplitude;
    const auto traj = integrate(p, {x0, 0.0, 0.0, 0.0}, t_end, cfg.integrator_options());
    std::vector<double> xs;
    xs.reserve(traj.size());
    const auto c0 = to_canonical(p, x0, 0.0);
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const auto& q = traj.states[k];
      xs.push_back(q.X1);
      const auto c = to_canonical(p, q.X1, q.Y1);
      const auto a = canonical_flow(p, c0, traj.times[k]);
      r.transport_error = std::max(r.transport_error, std::hypot(c.xi - a.xi, c.eta - a.eta));
      r.samples.push_back({grid[i], traj.times[k], a.xi, a.eta, c.xi, c.eta});
    }
    r.omega_fitted = fit_sinusoid(traj.times, xs).omega;
  });

  CsvTable freq;
  freq.header = {"lambda", "omega_formula", "omega_fitted", "relative_error", "transport_error"};
  CsvTable traj_csv;
  traj_csv.header = {"lambda", "t", "xi_analytic", "eta_analytic", "xi_integrated",
                     "eta_integrated"};
  double worst_transport = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& r = results[i];
    freq.rows.push_back({grid[i], r.omega_formula, r.omega_fitted,
                         std::abs(r.omega_fitted - r.omega_formula) / r.omega_formula,
                         r.transport_error});
    for (const auto& s : r.samples) traj_csv.rows.push_back(s);
    worst_transport = std::max(worst_transport, r.transport_error);
  }
  freq.footer.push_back(json{{"max_transport_error", worst_transport},
                             {"alpha", cfg.params.alpha},
                             {"amplitude", cfg.sweeps.amplitude},
                             {"periods", cfg.sweeps.periods}}
                            .dump());
  write_csv(out_path(ctx, cfg.output.canonical_frequencies), freq);
  write_csv(out_path(ctx, cfg.output.canonical_trajectories), traj_csv);
  log << "canonical: " << grid.size() << " lambda values, max transport error "
      << format_double(worst_transport) << '\n';
  return kExitOk;
}

int cmd_nodes(const CommandContext& ctx, std::ostream& log) {
  const auto& cfg = ctx.config;
  const auto psi = ansatz_slice(cfg.model(), cfg.initial, cfg.nodes.r2);
  const auto map = plaquette_windings(psi, cfg.nodes.box, cfg.nodes.cells);
  const auto nodes = find_nodes(psi, cfg.nodes.box, cfg.nodes.cells);
  const double cell = std::min(cfg.nodes.box.x_max - cfg.nodes.box.x_min,
                               cfg.nodes.box.y_max - cfg.nodes.box.y_min) /
                      cfg.nodes.cells;

  CsvTable csv;
  csv.header = {"x", "y", "charge", "circulation"};
  for (const auto& n : nodes) {
    const double gamma = circulation(psi, circle_loop(n.position, 0.25 * cell));
    csv.rows.push_back({n.position.x, n.position.y, static_cast<double>(n.charge), gamma});
  }
  csv.footer.push_back(json{{"count", nodes.size()},
                            {"plaquette_total", map.total()},
                            {"boundary_winding", map.boundary},
                            {"r2", {cfg.nodes.r2.x, cfg.nodes.r2.y}}}
                           .dump());
  write_csv(out_path(ctx, cfg.output.nodes), csv);
  log << "nodes: " << nodes.size() << " found, boundary winding " << map.boundary << '\n';
  return kExitOk;
}

int run_command(const std::string& name, const CommandContext& ctx, std::ostream& log,
                std::ostream& err) {
  try {
    if (name == "simulate") return cmd_simulate(ctx, log);
    if (name == "validate") return cmd_validate(ctx, log);
    if (name == "entropy") return cmd_entropy(ctx, log);
    if (name == "canonical") return cmd_canonical(ctx, log);
    if (name == "nodes") return cmd_nodes(ctx, log);
    err << "error:UnknownCommand: " << name << '\n';
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "error:ConfigError: " << one_line(e.what()) << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    err << "error:" << to_string(e.kind()) << ": " << one_line(e.what()) << '\n';
    switch (e.kind()) {
      case ErrorKind::InvalidParams:
      case ErrorKind::NonPositiveE:
      case ErrorKind::OrderOutOfRange:
        return kExitConfigError;
      default:
        return kExitRuntimeError;
    }
  } catch (const std::exception& e) {
    err << "error:IoError: " << one_line(e.what()) << '\n';
    return kExitRuntimeError;
  }
}

}  // namespace vortexlab::cli
