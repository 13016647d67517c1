#include "flexd/linkbudget.hpp"

#include <cmath>
#include <stdexcept>

namespace flexd {

double path_gain(const LinkBudget& budget, const RfConstants& rf, double distance_m) {
  if (distance_m <= 0.0) throw std::domain_error("path_gain: distance must be > 0");
  if (rf.frequency_hz <= 0.0) throw std::domain_error("path_gain: frequency must be > 0");
  constexpr double kFourPi = 12.566370614359172953850573533118;
  const double ratio = kSpeedOfLight / (kFourPi * rf.frequency_hz * distance_m);
  return budget.tx_gain * budget.rx_gain * ratio * ratio;
}

double average_snr(const LinkBudget& budget, double alpha) {
  if (alpha <= 0.0) throw std::domain_error("average_snr: alpha must be > 0");
  if (budget.noise_power_w <= 0.0) throw std::domain_error("average_snr: noise power must be > 0");
  return budget.tx_power_w * alpha / budget.noise_power_w;
}

}  // namespace flexd
