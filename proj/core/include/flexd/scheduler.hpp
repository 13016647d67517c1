#pragma once

#include "flexd/sinr.hpp"

namespace flexd {

// The two two-hop flows: FlowK delivers the backlog destined to U_k (relay
// downlink serves U_k), FlowL the one destined to U_l.
enum class Direction { FlowK, FlowL };

enum class Scheme { FlexD, HdFixedK, HdFixedL, HdAlternating, Fd };

enum class HdPolicy { FixedK, FixedL, Alternating };

const char* to_string(Scheme scheme);
const char* to_string(Direction d);

// One evaluated slot. For FlexD/HD, rate_k/rate_l are the half-duplex
// throughputs (W/2) log2(1 + sinr) of each flow and achieved_rate is the
// scheme's selection. For FD they are the full-duplex per-flow rates
// W log2(1 + sinr) and achieved_rate is their sum. energy_j = P_T * slot
// with P_T = 2P for FD, P otherwise.
struct SlotOutcome {
  int slot = 0;
  Scheme scheme = Scheme::FlexD;
  Direction chosen = Direction::FlowK;  // meaningless for FD (both active)
  bool both_active = false;             // true only for FD
  double sinr_k = 0.0;                  // composite SINR, flow K
  double sinr_l = 0.0;                  // composite SINR, flow L
  double rate_k = 0.0;                  // bits/s
  double rate_l = 0.0;                  // bits/s
  double achieved_rate = 0.0;           // bits/s
  double energy_j = 0.0;
};

// Everything a scheme needs to evaluate one slot once fading is drawn.
// fd_isl_sinr_* are the ISL SINRs recomputed with residual self-interference
// in the denominator; fading gains are shared across schemes so comparisons
// are paired.
struct SlotInputs {
  int slot = 0;
  double bandwidth_hz = 0.0;
  double slot_s = 0.0;
  double power_w = 0.0;        // per-scheme budget P; FD draws 2P
  DirectionState flow_k;
  DirectionState flow_l;
  double fd_isl_sinr_k = 0.0;
  double fd_isl_sinr_l = 0.0;
  double fading_gain_k = 1.0;  // |h|^2 on the downlink serving U_k
  double fading_gain_l = 1.0;
};

// Bottleneck of the ISL-downlink-backlog chain, in bits/s. Callers apply the
// half-duplex 1/2 pre-log when converting to throughput; never here.
double two_hop_rate(double isl_capacity_bps, double downlink_capacity_bps,
                    double backlog_bits, double slot_s);

// Argmax direction and its rate; ties go to FlowK.
std::pair<Direction, double> flexd_select(double rate_k, double rate_l);

SlotOutcome evaluate_flexd(const SlotInputs& in);
SlotOutcome evaluate_hd(const SlotInputs& in, HdPolicy policy);
SlotOutcome evaluate_fd(const SlotInputs& in);
SlotOutcome evaluate(const SlotInputs& in, Scheme scheme);

// ISL SINR under simultaneous bidirectional operation: RSI joins the
// interference-plus-noise denominator as rsi_power / noise_power.
double fd_isl_sinr(double desired_mean_snr, const InterferenceProfile& profile,
                   double rsi_power_w, double noise_power_w);

}  // namespace flexd
