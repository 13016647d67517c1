// flexd: closed-form vs Monte Carlo evaluation of flexible-duplex
// inter-satellite link scheduling. Subcommands:
//   sweep     threshold / power / time-slot sweeps to CSV
//   selfcheck built-in numerical consistency checks
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "flexd/errors.hpp"
#include "flexd/scenario.hpp"
#include "flexd/sweep.hpp"

namespace {

std::vector<flexd::Scheme> parse_schemes(const std::string& list) {
  std::vector<flexd::Scheme> schemes;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) schemes.push_back(flexd::scheme_from_string(tok));
  }
  if (schemes.empty()) throw flexd::ConfigError("--schemes", "must not be empty");
  return schemes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flexible-duplex inter-satellite link evaluation"};
  app.require_subcommand(1);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep and emit CSV");
  std::string scenario_path;
  std::string var_name = "zeta";
  std::string grid_text;
  std::string schemes_text;
  std::string out_path;
  std::uint64_t seed_override = 0;
  std::uint64_t trials_override = 0;
  unsigned workers_override = 0;
  bool timings = false;
  bool has_seed = false;
  bool has_trials = false;
  bool has_workers = false;
  sweep_cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  sweep_cmd->add_option("--var", var_name, "sweep variable: zeta, power, slot")->required();
  sweep_cmd->add_option("--grid", grid_text,
                        "grid: lin:<lo>:<hi>:<n>, log:<lo>:<hi>:<n>, or v1,v2,...")
      ->required();
  sweep_cmd->add_option("--schemes", schemes_text,
                        "comma list of flexd, hd-fixed-k, hd-fixed-l, hd-alt, fd "
                        "(default: scenario's list)");
  sweep_cmd->add_option("--out", out_path, "output CSV path")->required();
  sweep_cmd->add_option("--seed", seed_override, "override Monte Carlo seed")
      ->each([&has_seed](const std::string&) { has_seed = true; });
  sweep_cmd->add_option("--trials", trials_override, "override Monte Carlo trial count")
      ->each([&has_trials](const std::string&) { has_trials = true; });
  sweep_cmd->add_option("--workers", workers_override, "override worker thread count")
      ->each([&has_workers](const std::string&) { has_workers = true; });
  sweep_cmd->add_flag("--timings", timings,
                      "record wall-clock runtime_ms per row (breaks byte-identical reruns)");

  // selfcheck
  auto* check_cmd = app.add_subcommand("selfcheck", "run built-in consistency checks");
  std::uint64_t check_seed = 20250810;
  double perturb_marcum = 0.0;
  check_cmd->add_option("--seed", check_seed, "seed for the simulation-backed checks");
  check_cmd->add_option("--perturb-marcum", perturb_marcum,
                        "test hook: offset applied to Marcum values under check")
      ->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_cmd->parsed()) {
      flexd::Scenario scenario = flexd::load_scenario(scenario_path);
      if (has_seed) scenario.plan.seed = seed_override;
      if (has_trials) {
        if (trials_override < 1) throw flexd::ConfigError("--trials", "must be >= 1");
        scenario.plan.trials = trials_override;
      }
      if (has_workers) {
        if (workers_override < 1) throw flexd::ConfigError("--workers", "must be >= 1");
        scenario.plan.workers = workers_override;
      }

      flexd::SweepSpec spec;
      spec.variable = flexd::sweep_variable_from_string(var_name);
      spec.grid = flexd::parse_grid(grid_text);
      spec.schemes = schemes_text.empty() ? scenario.schemes : parse_schemes(schemes_text);

      flexd::SweepOptions options;
      options.timings = timings;
      options.scenario_label = scenario_path;
      const flexd::SweepResult result = flexd::run_sweep_to_file(scenario, spec, out_path, options);

      std::size_t flagged = 0;
      for (const auto& row : result.rows) {
        if (!row.pass) ++flagged;
      }
      std::cerr << "wrote " << result.rows.size() << " rows to " << out_path;
      if (flagged > 0) std::cerr << " (" << flagged << " flagged)";
      std::cerr << '\n';
      return 0;
    }

    flexd::SelfcheckOptions options;
    options.seed = check_seed;
    options.perturb_marcum = perturb_marcum;
    const flexd::SelfcheckReport report = flexd::selfcheck(options);
    flexd::print_report(report, std::cout);
    return report.all_pass() ? 0 : 1;
  } catch (const flexd::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
