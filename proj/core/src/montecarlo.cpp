#include "flexd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "flexd/scenario.hpp"

namespace flexd {

namespace {

// Contiguous-range fan-out; ranges depend only on (n, workers), never on
// scheduling, so results stay deterministic.
template <typename Fn>
void run_parallel(std::uint64_t n, unsigned workers, Fn&& fn) {
  const unsigned w = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));
  if (w <= 1) {
    fn(std::uint64_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(w);
  const std::uint64_t chunk = (n + w - 1) / w;
  for (unsigned i = 0; i < w; ++i) {
    const std::uint64_t begin = static_cast<std::uint64_t>(i) * chunk;
    const std::uint64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : threads) t.join();
}

double system_sinr_of(const SlotOutcome& outcome) {
  switch (outcome.scheme) {
    case Scheme::FlexD:
    case Scheme::Fd:
      return std::max(outcome.sinr_k, outcome.sinr_l);
    case Scheme::HdFixedK:
    case Scheme::HdFixedL:
    case Scheme::HdAlternating:
      return outcome.chosen == Direction::FlowK ? outcome.sinr_k : outcome.sinr_l;
  }
  throw std::logic_error("system_sinr_of: unknown scheme");
}

Estimate mean_estimate(const std::vector<double>& values) {
  const auto n = static_cast<std::uint64_t>(values.size());
  const double mean = pairwise_sum(values) / static_cast<double>(n);
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    sq[i] = d * d;
  }
  const double var = n > 1 ? pairwise_sum(sq) / static_cast<double>(n - 1) : 0.0;
  return Estimate{mean, std::sqrt(var / static_cast<double>(n)), n};
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 64) {
    double s = 0.0;
    for (const double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

CompareReport compare(double closed_value, const Estimate& est, double abs_tol,
                      double sigma_mult, CompareMode mode) {
  if (abs_tol <= 0.0) throw std::domain_error("compare: abs_tol must be > 0");
  CompareReport report;
  report.closed = closed_value;
  report.mc_mean = est.mean;
  report.mc_std_error = est.std_error;
  report.abs_diff = std::abs(closed_value - est.mean);
  report.mode = mode;
  if (mode == CompareMode::TwoSided) {
    report.pass = report.abs_diff <= std::max(abs_tol, sigma_mult * est.std_error);
  } else {
    // abs_tol doubles as numerical slack for near-deterministic estimates
    // whose standard error collapses to zero.
    report.pass = closed_value >= est.mean - std::max(abs_tol, sigma_mult * est.std_error);
  }
  return report;
}

SlotOutcome simulate_slot(const Scenario& scenario, int slot, Scheme scheme, Rng& rng) {
  ResolvedSlot resolved = scenario.resolve_slot(slot);
  // Draw order is fixed (flow K then flow L) so trials are reproducible.
  resolved.inputs.fading_gain_k = sample_rician_power(scenario.fading, rng);
  resolved.inputs.fading_gain_l = sample_rician_power(scenario.fading, rng);
  return evaluate(resolved.inputs, scheme);
}

std::vector<double> sample_system_sinr(const Scenario& scenario, Scheme scheme,
                                       const TrialPlan& plan) {
  const int horizon = scenario.timeline.horizon_slots;
  std::vector<ResolvedSlot> slots;
  slots.reserve(static_cast<std::size_t>(horizon));
  for (int t = 0; t < horizon; ++t) slots.push_back(scenario.resolve_slot(t));

  std::vector<double> values(plan.trials);
  run_parallel(plan.trials, plan.workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      Rng rng = Rng::for_stream(plan.seed, i);
      SlotInputs in = slots[static_cast<std::size_t>(i % horizon)].inputs;
      in.fading_gain_k = sample_rician_power(scenario.fading, rng);
      in.fading_gain_l = sample_rician_power(scenario.fading, rng);
      values[i] = system_sinr_of(evaluate(in, scheme));
    }
  });
  return values;
}

std::vector<Estimate> estimate_outage_curve(const Scenario& scenario, Scheme scheme,
                                            std::span<const double> zeta_grid,
                                            const TrialPlan& plan) {
  std::vector<double> sinr = sample_system_sinr(scenario, scheme, plan);
  std::sort(sinr.begin(), sinr.end());
  std::vector<Estimate> out;
  out.reserve(zeta_grid.size());
  for (const double zeta : zeta_grid) {
    if (zeta < 0.0) throw std::domain_error("estimate_outage: zeta must be >= 0");
    const auto count = static_cast<std::uint64_t>(
        std::upper_bound(sinr.begin(), sinr.end(), zeta) - sinr.begin());
    const double p = static_cast<double>(count) / static_cast<double>(plan.trials);
    out.push_back(Estimate{p, std::sqrt(p * (1.0 - p) / static_cast<double>(plan.trials)),
                           plan.trials});
  }
  return out;
}

Estimate estimate_outage(const Scenario& scenario, double zeta, const TrialPlan& plan) {
  const double grid[1] = {zeta};
  return estimate_outage_curve(scenario, Scheme::FlexD, grid, plan).front();
}

namespace {

Estimate ergodic_ee_impl(const Scenario& scenario, Scheme scheme, const TrialPlan& plan,
                         int fixed_slot) {
  const double power = scenario.scheme_power_w(scheme);
  if (power <= 0.0) throw std::domain_error("estimate_ergodic_ee: scheme power must be > 0");

  const int horizon = scenario.timeline.horizon_slots;
  if (fixed_slot >= horizon) throw std::out_of_range("estimate_ergodic_ee: slot outside horizon");
  std::vector<ResolvedSlot> slots;
  slots.reserve(static_cast<std::size_t>(horizon));
  for (int t = 0; t < horizon; ++t) slots.push_back(scenario.resolve_slot(t));

  std::vector<double> values(plan.trials);
  run_parallel(plan.trials, plan.workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      Rng rng = Rng::for_stream(plan.seed, i);
      const int t = fixed_slot >= 0 ? fixed_slot : static_cast<int>(i % horizon);
      SlotInputs in = slots[static_cast<std::size_t>(t)].inputs;
      in.fading_gain_k = sample_rician_power(scenario.fading, rng);
      in.fading_gain_l = sample_rician_power(scenario.fading, rng);
      const SlotOutcome outcome = evaluate(in, scheme);
      double throughput;
      if (scheme == Scheme::Fd) {
        // Delivered-direction metric at doubled power draw.
        throughput = 0.5 * in.bandwidth_hz *
                     std::log2(1.0 + std::max(outcome.sinr_k, outcome.sinr_l));
      } else {
        throughput = outcome.achieved_rate;
      }
      values[i] = throughput / power;
    }
  });
  return mean_estimate(values);
}

}  // namespace

Estimate estimate_ergodic_ee(const Scenario& scenario, Scheme scheme, const TrialPlan& plan) {
  return ergodic_ee_impl(scenario, scheme, plan, -1);
}

Estimate estimate_ergodic_ee_at_slot(const Scenario& scenario, Scheme scheme, int slot,
                                     const TrialPlan& plan) {
  if (slot < 0) throw std::out_of_range("estimate_ergodic_ee_at_slot: slot must be >= 0");
  return ergodic_ee_impl(scenario, scheme, plan, slot);
}

}  // namespace flexd
