#include "flexd/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flexd {

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::FlexD: return "flexd";
    case Scheme::HdFixedK: return "hd-fixed-k";
    case Scheme::HdFixedL: return "hd-fixed-l";
    case Scheme::HdAlternating: return "hd-alt";
    case Scheme::Fd: return "fd";
  }
  return "?";
}

const char* to_string(Direction d) {
  return d == Direction::FlowK ? "flow-k" : "flow-l";
}

double two_hop_rate(double isl_capacity_bps, double downlink_capacity_bps,
                    double backlog_bits, double slot_s) {
  if (isl_capacity_bps < 0.0 || downlink_capacity_bps < 0.0 || backlog_bits < 0.0 ||
      slot_s <= 0.0) {
    throw std::domain_error("two_hop_rate: inputs must be non-negative, slot > 0");
  }
  return std::min({isl_capacity_bps, downlink_capacity_bps, backlog_bits / slot_s});
}

std::pair<Direction, double> flexd_select(double rate_k, double rate_l) {
  if (rate_k < 0.0 || rate_l < 0.0) throw std::domain_error("flexd_select: rates must be >= 0");
  if (rate_l > rate_k) return {Direction::FlowL, rate_l};
  return {Direction::FlowK, rate_k};
}

namespace {

double half_duplex_rate_bps(double bandwidth_hz, double sinr) {
  return 0.5 * bandwidth_hz * std::log2(1.0 + sinr);
}

SlotOutcome base_outcome(const SlotInputs& in, Scheme scheme) {
  SlotOutcome out;
  out.slot = in.slot;
  out.scheme = scheme;
  out.sinr_k = composite_direction_sinr(in.flow_k, in.fading_gain_k);
  out.sinr_l = composite_direction_sinr(in.flow_l, in.fading_gain_l);
  out.rate_k = half_duplex_rate_bps(in.bandwidth_hz, out.sinr_k);
  out.rate_l = half_duplex_rate_bps(in.bandwidth_hz, out.sinr_l);
  out.energy_j = in.power_w * in.slot_s;
  return out;
}

}  // namespace

SlotOutcome evaluate_flexd(const SlotInputs& in) {
  SlotOutcome out = base_outcome(in, Scheme::FlexD);
  const auto [dir, rate] = flexd_select(out.rate_k, out.rate_l);
  out.chosen = dir;
  out.achieved_rate = rate;
  return out;
}

SlotOutcome evaluate_hd(const SlotInputs& in, HdPolicy policy) {
  Scheme scheme = Scheme::HdAlternating;
  Direction chosen = Direction::FlowK;
  switch (policy) {
    case HdPolicy::FixedK:
      scheme = Scheme::HdFixedK;
      chosen = Direction::FlowK;
      break;
    case HdPolicy::FixedL:
      scheme = Scheme::HdFixedL;
      chosen = Direction::FlowL;
      break;
    case HdPolicy::Alternating:
      scheme = Scheme::HdAlternating;
      chosen = (in.slot % 2 == 0) ? Direction::FlowK : Direction::FlowL;
      break;
  }
  SlotOutcome out = base_outcome(in, scheme);
  out.chosen = chosen;
  out.achieved_rate = (chosen == Direction::FlowK) ? out.rate_k : out.rate_l;
  return out;
}

SlotOutcome evaluate_fd(const SlotInputs& in) {
  SlotOutcome out;
  out.slot = in.slot;
  out.scheme = Scheme::Fd;
  out.both_active = true;

  DirectionState fk = in.flow_k;
  fk.isl_sinr = in.fd_isl_sinr_k;
  fk.cut_level = cut_level(fk.isl_sinr, fk.backlog_sinr);
  DirectionState fl = in.flow_l;
  fl.isl_sinr = in.fd_isl_sinr_l;
  fl.cut_level = cut_level(fl.isl_sinr, fl.backlog_sinr);

  out.sinr_k = composite_direction_sinr(fk, in.fading_gain_k);
  out.sinr_l = composite_direction_sinr(fl, in.fading_gain_l);
  // Both directions occupy the slot: per-flow rates carry no 1/2 pre-log.
  out.rate_k = in.bandwidth_hz * std::log2(1.0 + out.sinr_k);
  out.rate_l = in.bandwidth_hz * std::log2(1.0 + out.sinr_l);
  out.achieved_rate = out.rate_k + out.rate_l;
  out.energy_j = 2.0 * in.power_w * in.slot_s;
  return out;
}

SlotOutcome evaluate(const SlotInputs& in, Scheme scheme) {
  switch (scheme) {
    case Scheme::FlexD: return evaluate_flexd(in);
    case Scheme::HdFixedK: return evaluate_hd(in, HdPolicy::FixedK);
    case Scheme::HdFixedL: return evaluate_hd(in, HdPolicy::FixedL);
    case Scheme::HdAlternating: return evaluate_hd(in, HdPolicy::Alternating);
    case Scheme::Fd: return evaluate_fd(in);
  }
  throw std::logic_error("evaluate: unknown scheme");
}

double fd_isl_sinr(double desired_mean_snr, const InterferenceProfile& profile,
                   double rsi_power_w, double noise_power_w) {
  if (rsi_power_w < 0.0) throw std::domain_error("fd_isl_sinr: rsi power must be >= 0");
  if (noise_power_w <= 0.0) throw std::domain_error("fd_isl_sinr: noise power must be > 0");
  if (desired_mean_snr < 0.0) throw std::domain_error("fd_isl_sinr: desired mean SNR must be >= 0");
  double denom = 1.0 + rsi_power_w / noise_power_w;
  for (const double g : profile) {
    if (g < 0.0) throw std::domain_error("fd_isl_sinr: interferer mean SNR must be >= 0");
    denom += g;
  }
  return desired_mean_snr / denom;
}

}  // namespace flexd
