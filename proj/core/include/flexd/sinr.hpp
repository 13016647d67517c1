#pragma once

#include <vector>

namespace flexd {

// Backlog-equivalent SINR values at or above this sentinel mean the queue
// never binds within one slot (exponent capped at 60).
inline constexpr double kBacklogSinrSaturation = 0x1p60;

// Interferer average SNRs seen by one receiving satellite in one slot.
// May be empty (noise-limited link).
using InterferenceProfile = std::vector<double>;

// One two-hop flow's deterministic per-slot state. cut_level is the
// deterministic ceiling min(isl_sinr, backlog_sinr) that clips the random
// downlink SINR.
struct DirectionState {
  double isl_sinr = 0.0;       // deterministic ISL SINR
  double downlink_mean = 0.0;  // average downlink SNR (fading multiplies this)
  double backlog_bits = 0.0;   // bits available this slot
  double backlog_sinr = 0.0;   // derived, 2^(Q / (W slot)) - 1
  double cut_level = 0.0;      // derived, min(isl_sinr, backlog_sinr)
};

// Deterministic ISL SINR: desired / (sum of interferer mean SNRs + 1).
double isl_sinr(double desired_mean_snr, const InterferenceProfile& profile);

// SINR whose one-slot Shannon rate exactly drains q_bits:
// 2^(q / (W slot)) - 1, saturating at kBacklogSinrSaturation once the
// exponent exceeds 60 (such a backlog never binds).
double backlog_equivalent_sinr(double q_bits, double bandwidth_hz, double slot_s);

double cut_level(double isl, double backlog_sinr);

DirectionState make_direction_state(double isl, double downlink_mean, double q_bits,
                                    double bandwidth_hz, double slot_s);

// Composite per-flow SINR: min(cut_level, downlink_mean * |h|^2).
double composite_direction_sinr(const DirectionState& state, double fading_power_gain);

}  // namespace flexd
