// uamlanes: demand generation, lane-allocation solve, policy comparison and
// sensitivity sweeps for a bi-directional UAM corridor.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "uamlanes/uamlanes.hpp"

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kInfeasible = 3, kIo = 4 };

struct Options {
  std::string config_path;
  std::string trips_path;
  std::string policy = "dynamic";
  std::string out_dir;
  std::string out_file;
  std::string seed;
  unsigned threads = 0;
};

uamlanes::RunConfig resolve_config(const Options& opt) {
  uamlanes::RunConfig config = opt.config_path.empty() ? uamlanes::config_from_json(uamlanes::json::object())
                                                       : uamlanes::load_config(opt.config_path);
  // Precedence: flag > environment > config file.
  std::string seed = opt.seed;
  if (seed.empty())
    if (const char* env = std::getenv("UAMLANES_SEED")) seed = env;
  if (!seed.empty()) {
    const auto parsed = uamlanes::parse_integer(seed);
    if (!parsed || *parsed < 0) throw uamlanes::ConfigError("seed must be a non-negative integer: " + seed);
    config.seed = static_cast<std::uint64_t>(*parsed);
  }
  if (!opt.out_dir.empty()) {
    config.output_dir = opt.out_dir;
  } else if (const char* env = std::getenv("UAMLANES_OUT_DIR")) {
    config.output_dir = env;
  }
  return config;
}

int run_command(const std::string& name, const Options& opt) {
  const uamlanes::RunConfig config = resolve_config(opt);
  if (name == "gen-trips") {
    const std::string path = opt.out_file.empty() ? config.output_dir + "/trips.csv" : opt.out_file;
    std::cout << uamlanes::cmd_gen_trips(config, path) << "\n";
  } else if (name == "run") {
    const auto run = uamlanes::cmd_run(config, opt.trips_path, uamlanes::policy_from_string(opt.policy),
                                       config.output_dir, &std::cerr);
    std::cout << uamlanes::summary_line(run) << "\n";
  } else if (name == "compare") {
    const auto runs = uamlanes::cmd_compare(config, opt.trips_path, config.output_dir);
    for (const auto& r : runs) std::cout << uamlanes::summary_line(r) << "\n";
  } else if (name == "sweep") {
    const auto rows = uamlanes::cmd_sweep(config, opt.trips_path, config.output_dir, opt.threads);
    std::cout << "sweep: " << rows.size() << " cells -> " << config.output_dir << "/sweep.csv\n";
  } else if (name == "export-lp") {
    const std::string path = opt.out_file.empty() ? config.output_dir + "/model.lp" : opt.out_file;
    const auto sol = uamlanes::cmd_export_lp(config, opt.trips_path, path);
    std::cout << "wrote " << path << " (exact optimum Z=" << uamlanes::format_number(sol.objective_z) << ")\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic directional lane allocation for UAM corridors"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub, bool trips) {
    sub->add_option("--config", opt.config_path, "Run configuration (JSON)");
    sub->add_option("--out-dir", opt.out_dir, "Output directory (env UAMLANES_OUT_DIR)");
    sub->add_option("--seed", opt.seed, "Synthetic population seed (env UAMLANES_SEED)");
    if (trips) sub->add_option("--trips", opt.trips_path, "Trip CSV; omit to use the synthetic population");
  };

  auto* gen = app.add_subcommand("gen-trips", "Generate the synthetic trip population as CSV");
  common(gen, false);
  gen->add_option("--out", opt.out_file, "Trip CSV path (default <out-dir>/trips.csv)");

  auto* run = app.add_subcommand("run", "Dispatch, allocate lanes with one policy, evaluate");
  common(run, true);
  run->add_option("--policy", opt.policy, "dynamic | fixed5050 | fixed_asym | greedy");

  auto* compare = app.add_subcommand("compare", "Score all four policies on the same demand");
  common(compare, true);

  auto* sweep = app.add_subcommand("sweep", "Lane-count x capture-rate sensitivity sweep");
  common(sweep, true);
  sweep->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");

  auto* lp = app.add_subcommand("export-lp", "Write the lane program in LP format");
  common(lp, true);
  lp->add_option("--out", opt.out_file, "LP path (default <out-dir>/model.lp)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return run_command(name, opt);
  } catch (const uamlanes::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const uamlanes::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const uamlanes::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const uamlanes::SchemaError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const uamlanes::DimensionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const uamlanes::SizeBoundError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
