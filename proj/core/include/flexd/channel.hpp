#pragma once

#include "flexd/rng.hpp"

namespace flexd {

// Small-scale satellite-to-ground fading law: h ~ CN(mu, sigma_g_sq), i.e. a
// fixed line-of-sight component of magnitude |mu| plus circularly-symmetric
// complex Gaussian scatter of total variance sigma_g_sq.
struct RicianParams {
  double mu_abs = 0.0;       // |mu|, LoS component magnitude
  double sigma_g_sq = 1.0;   // scatter variance (> 0)
};

// Nakagami-m power fading for the NLoS variant; integer shape only (the
// closed CDF is the Erlang survival sum).
struct NakagamiParams {
  int m = 1;                 // shape, >= 1
  double mean_snr = 1.0;     // average SNR, linear
};

// First-order Marcum Q-function Q1(a, b), evaluated through the
// noncentral-chi-square Poisson mixture. Absolute error <= 1e-10 for
// a in [0, 30] and any b >= 0; throws std::domain_error for negative input
// or for a beyond the supported series range (a > ~37).
double marcum_q1(double a, double b);

// CDF of the downlink power SINR gamma = mean_snr * |h|^2 under Rician
// fading: F(x) = 1 - Q1(|mu| / sqrt(sigma_g_sq / 2), sqrt(2 x / (mean_snr sigma_g_sq))).
double rician_power_cdf(double mean_snr, const RicianParams& params, double x);

// Draws |h|^2 = |mu + g|^2 with g ~ CN(0, sigma_g_sq). E[|h|^2] = mu^2 + sigma_g_sq.
double sample_rician_power(const RicianParams& params, Rng& rng);

// Nakagami-m power CDF: 1 - exp(-m x / mean) * sum_{r<m} (m x / mean)^r / r!.
// Equals the exponential CDF for m = 1.
double nakagami_power_cdf(const NakagamiParams& params, double x);

namespace detail {
// Regularized lower incomplete gamma P(k, x) for integer k >= 1, computed
// from positive series on both branches so small values keep full relative
// accuracy. Shared by the Marcum/Rician and series evaluations.
double erlang_cdf(int k, double x);
}  // namespace detail

}  // namespace flexd
