#pragma once

#include "flexd/units.hpp"

namespace flexd {

struct RfConstants {
  double frequency_hz = 0.0;   // carrier, > 0
  double bandwidth_hz = 0.0;   // common ISL/downlink bandwidth W, > 0
};

// Deterministic large-scale budget of one directed link. Gains are effective
// scalars per direction (pointing and Doppler compensation folded in).
struct LinkBudget {
  double tx_gain = 1.0;        // linear, > 0
  double rx_gain = 1.0;        // linear, > 0
  double tx_power_w = 0.0;     // >= 0 (0 only for silenced baselines)
  double noise_power_w = 0.0;  // > 0
};

// Free-space path gain alpha = Gt * Gr * c^2 / (4 pi f d)^2.
double path_gain(const LinkBudget& budget, const RfConstants& rf, double distance_m);

// Average SNR = P * alpha / noise, linear.
double average_snr(const LinkBudget& budget, double alpha);

}  // namespace flexd
