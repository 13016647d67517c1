#include "flexd/sinr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flexd {

double isl_sinr(double desired_mean_snr, const InterferenceProfile& profile) {
  if (desired_mean_snr < 0.0) throw std::domain_error("isl_sinr: desired mean SNR must be >= 0");
  double denom = 1.0;
  for (const double g : profile) {
    if (g < 0.0) throw std::domain_error("isl_sinr: interferer mean SNR must be >= 0");
    denom += g;
  }
  return desired_mean_snr / denom;
}

double backlog_equivalent_sinr(double q_bits, double bandwidth_hz, double slot_s) {
  if (q_bits < 0.0) throw std::domain_error("backlog_equivalent_sinr: q_bits must be >= 0");
  if (bandwidth_hz <= 0.0) throw std::domain_error("backlog_equivalent_sinr: bandwidth must be > 0");
  if (slot_s <= 0.0) throw std::domain_error("backlog_equivalent_sinr: slot must be > 0");
  const double exponent = q_bits / (bandwidth_hz * slot_s);
  if (exponent >= 60.0) return kBacklogSinrSaturation;
  return std::exp2(exponent) - 1.0;
}

double cut_level(double isl, double backlog_sinr) {
  return std::min(isl, backlog_sinr);
}

DirectionState make_direction_state(double isl, double downlink_mean, double q_bits,
                                    double bandwidth_hz, double slot_s) {
  if (isl < 0.0 || downlink_mean < 0.0) {
    throw std::domain_error("make_direction_state: SINR fields must be >= 0");
  }
  DirectionState state;
  state.isl_sinr = isl;
  state.downlink_mean = downlink_mean;
  state.backlog_bits = q_bits;
  state.backlog_sinr = backlog_equivalent_sinr(q_bits, bandwidth_hz, slot_s);
  state.cut_level = cut_level(isl, state.backlog_sinr);
  return state;
}

double composite_direction_sinr(const DirectionState& state, double fading_power_gain) {
  return std::min(state.cut_level, state.downlink_mean * fading_power_gain);
}

}  // namespace flexd
