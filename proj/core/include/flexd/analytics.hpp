#pragma once

#include <span>
#include <string>

#include "flexd/channel.hpp"

namespace flexd {

// Deterministic per-slot inputs of the two-flow outage/EE closed forms.
// dl_mean_k is the average SNR of the downlink serving U_k (flow K's random
// hop); omega_k its deterministic cut level; likewise for flow L.
struct OutageInputs {
  double omega_k = 0.0;
  double omega_l = 0.0;
  double dl_mean_k = 1.0;
  double dl_mean_l = 1.0;
  RicianParams fading;
};

// Weight exponent of the double series in the mean-SINR closed form. SumMN
// uses (mu/sigma_g)^(2(m+n)), the form consistent with the product of two
// independent Rician CDF expansions; ProductMN uses (mu/sigma_g)^(2mn) and is
// retained for comparison. SumMN is the default; it is the variant that
// agrees with the sampling oracle.
enum class SeriesExponent { SumMN, ProductMN };

struct SeriesControls {
  int truncation = 20;             // M >= 1
  double term_tolerance = 1e-12;   // early exit once terms stop mattering
  SeriesExponent exponent = SeriesExponent::SumMN;
};

enum class OutageRegion { Product, FlowKDownlink, FlowLDownlink, Saturated };
const char* to_string(OutageRegion region);

// SINR threshold equivalent to a throughput target delta under the 1/2
// half-duplex pre-log: 2^(2 delta / W) - 1.
double threshold_from_rate(double delta_bps, double bandwidth_hz);

// Piecewise system outage probability P(max of the two composite flow SINRs
// <= zeta). Regions (half-open, lower bound inclusive):
//   zeta <  min(omega)      -> product of both downlink CDFs
//   omega_l <= zeta < omega_k -> flow K's downlink CDF alone
//   omega_k <= zeta < omega_l -> flow L's downlink CDF alone
//   zeta >= max(omega)      -> exactly 1
double outage_probability(double zeta, const OutageInputs& in);
OutageRegion outage_region(double zeta, const OutageInputs& in);

// Same region dispatch on externally supplied per-flow CDF values at zeta;
// generic in the fading law (the NLoS variant passes Nakagami CDF values).
double outage_probability_from_cdfs(double zeta, double omega_k, double omega_l,
                                    double cdf_k_at_zeta, double cdf_l_at_zeta);

// Outage of one flow alone (half-duplex baseline curves): clipped CDF.
double single_flow_outage(double zeta, double omega, double dl_mean,
                          const RicianParams& fading);

// One-hop direct-downlink outage for slots with no relay backlog.
double no_backlog_outage(double zeta, double dl_mean, const RicianParams& fading);

// Phi_m(A, S) = (1/A) sum_{i=0}^m [1 - e^(-A S) sum_{r=0}^i (A S)^r / r!],
// the closed form of the integral of the Erlang survival sums over [0, S].
double phi(int m, double a, double s);

// Psi_mn(A1, A2, S): the companion double sum with the truncated-exponential
// bracket; symmetric under the simultaneous swap (m, A1) <-> (n, A2).
double psi(int m, int n, double a1, double a2, double s);

// E[max(min(omega_l, H_l), min(omega_k, H_k))] by the tail-sum series with
// truncation M. Backlog-saturated cut levels are clamped to the point where
// the corresponding downlink survival falls below ~1e-31 before integration.
// Throws SeriesError when the truncation order cannot carry the series
// weights or a negative intermediate appears.
double mean_system_sinr(const OutageInputs& in, const SeriesControls& ctl);

// E[min(omega, H)] for a single flow; same series machinery.
double mean_single_flow_sinr(double omega, double dl_mean, const RicianParams& fading,
                             const SeriesControls& ctl);

// Jensen upper bound on energy efficiency: (W / (2 P_T)) log2(1 + E[Gamma]).
double energy_efficiency_bound(double mean_sinr, double bandwidth_hz, double total_power_w);

// Best-user selection outage: product of the per-user CDF values.
double multiuser_outage(std::span<const double> per_user_cdf);

// Weakest-hop CDF over serial hops: 1 - prod(1 - F_h).
double multihop_cdf(std::span<const double> per_hop_cdf);

}  // namespace flexd
