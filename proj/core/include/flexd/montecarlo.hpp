#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "flexd/rng.hpp"
#include "flexd/scheduler.hpp"

namespace flexd {

struct Scenario;

// Trial budget for a simulation estimate. Results are bit-identical for a
// fixed (seed, trials) pair regardless of worker count: every trial draws
// from its own hash-derived stream and reductions are ordered.
struct TrialPlan {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

enum class CompareMode { TwoSided, UpperBound };

// Verdict on a closed-form value against a simulation estimate. TwoSided
// passes iff |closed - mean| <= max(abs_tol, sigma_mult * std_error);
// UpperBound (for Jensen-style bounds) iff closed >= mean -
// max(abs_tol, sigma_mult * std_error), abs_tol covering the zero-variance
// deterministic corner.
struct CompareReport {
  double closed = 0.0;
  double mc_mean = 0.0;
  double mc_std_error = 0.0;
  double abs_diff = 0.0;
  bool pass = false;
  CompareMode mode = CompareMode::TwoSided;
};

CompareReport compare(double closed_value, const Estimate& est, double abs_tol,
                      double sigma_mult, CompareMode mode = CompareMode::TwoSided);

// Deterministic ordered pairwise reduction; keeps sums identical across
// worker counts.
double pairwise_sum(std::span<const double> values);

// Draws fading for both downlinks and evaluates one slot under `scheme`.
SlotOutcome simulate_slot(const Scenario& scenario, int slot, Scheme scheme, Rng& rng);

// Per-trial system SINR of `scheme` (max of composites for FlexD/FD, the
// chosen flow's composite for HD), cycling trials over the scenario horizon.
std::vector<double> sample_system_sinr(const Scenario& scenario, Scheme scheme,
                                       const TrialPlan& plan);

// Fraction of trials whose system SINR falls at or below each threshold.
// One sample set serves the whole grid, so a single zeta is just a
// one-element grid.
std::vector<Estimate> estimate_outage_curve(const Scenario& scenario, Scheme scheme,
                                            std::span<const double> zeta_grid,
                                            const TrialPlan& plan);
Estimate estimate_outage(const Scenario& scenario, double zeta, const TrialPlan& plan);

// Ergodic energy efficiency (bits/joule): mean of per-trial throughput over
// the scheme's power draw. FlexD/HD use (W/2) log2(1 + sinr) / P; FD uses the
// delivered-direction metric (W/2) log2(1 + max sinr) / (2P).
Estimate estimate_ergodic_ee(const Scenario& scenario, Scheme scheme, const TrialPlan& plan);

// Same estimate with every trial pinned to one slot (temporal sweeps).
Estimate estimate_ergodic_ee_at_slot(const Scenario& scenario, Scheme scheme, int slot,
                                     const TrialPlan& plan);

}  // namespace flexd
