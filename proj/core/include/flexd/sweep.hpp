#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "flexd/scenario.hpp"

namespace flexd {

enum class SweepVariable { Zeta, PowerDbw, Slot };

const char* to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::Zeta;
  std::vector<double> grid;      // non-empty, strictly increasing
  std::vector<Scheme> schemes;   // non-empty
};

struct SweepRow {
  double value = 0.0;
  Scheme scheme = Scheme::FlexD;
  double closed_form = 0.0;
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  std::string region_label;      // outage sweeps only
  double runtime_ms = 0.0;       // populated only when timings are requested
  bool pass = false;
};

struct SweepOptions {
  // Wall-clock timings vary run to run; they are opt-in so that default CSV
  // output stays byte-identical for identical inputs and seed.
  bool timings = false;
  std::string scenario_label = "-";
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  std::vector<std::string> metadata;  // '#'-prefixed header lines
};

// Evaluates closed form and Monte Carlo estimate for every (grid value,
// scheme) pair. Outage sweeps verify two-sided agreement (0.01 absolute or
// 3 sigma); EE sweeps verify the one-sided Jensen bound. Rows failing their
// check carry verdict "flag" in the CSV.
SweepResult run_sweep(const Scenario& scenario, const SweepSpec& spec,
                      const SweepOptions& options = {});

void write_csv(const SweepResult& result, std::ostream& out);
SweepResult run_sweep_to_file(const Scenario& scenario, const SweepSpec& spec,
                              const std::string& out_path, const SweepOptions& options = {});

// "lin:<lo>:<hi>:<count>", "log:<lo>:<hi>:<count>", or a comma-separated
// list; the result must be strictly increasing.
std::vector<double> parse_grid(const std::string& text);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelfcheckOptions {
  std::uint64_t seed = 20250810;
  // Test hook: offset added to the Marcum values under check, standing in
  // for a corrupted implementation.
  double perturb_marcum = 0.0;
};

struct SelfcheckReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

// Special-function reference grids, Jensen dominance, and a small outage
// cross-validation on a built-in scenario. Deterministic output for a fixed
// seed.
SelfcheckReport selfcheck(const SelfcheckOptions& options = {});
void print_report(const SelfcheckReport& report, std::ostream& out);

}  // namespace flexd
