#include "cli/app.hpp"

#include <ostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace vortexlab::cli {

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entangled two-vortex dynamics toolkit", "vortexlab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int jobs = 1;
  app.add_option("--config,-c", config_path, "YAML run configuration");
  app.add_option("--out,-o", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "RNG seed for randomized checks")->capture_default_str();
  app.add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  app.add_subcommand("simulate", "integrate one trajectory");
  app.add_subcommand("validate", "run the numerical validation suite");
  app.add_subcommand("entropy", "entanglement entropy over a lambda grid");
  app.add_subcommand("canonical", "fixed-vortex canonical frequencies");
  app.add_subcommand("nodes", "locate wave-function nodes on a 2D slice");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  // CLI11 wants argv order reversed when given a vector.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error:UsageError: " << e.what() << '\n';
    return kExitConfigError;
  }

  CommandContext ctx;
  ctx.out_dir = out_dir;
  ctx.seed = seed;
  ctx.jobs = jobs;
  if (!config_path.empty()) {
    try {
      ctx.config = load_config(config_path);
    } catch (const ConfigError& e) {
      std::string msg = e.what();
      for (char& c : msg) if (c == '\n') c = ' ';
      err << "error:ConfigError: " << msg << '\n';
      return kExitConfigError;
    }
  }
  const std::string name = app.get_subcommands().front()->get_name();
  return run_command(name, ctx, out, err);
}

}  // namespace vortexlab::cli
