#include "flexd/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace flexd {

namespace detail {

double erlang_cdf(int k, double x) {
  if (k < 1) throw std::domain_error("erlang_cdf: k must be >= 1");
  if (x <= 0.0) return 0.0;

  // Q(k, x) = exp(-x) * sum_{r<k} x^r / r!, accumulated with the exp(-x)
  // factor folded into every term so nothing overflows.
  double term = std::exp(-x);
  if (term == 0.0) {
    // x > ~745 with the small k used here: survival mass is below 1e-150.
    return 1.0;
  }
  double upper = term;
  for (int r = 1; r < k; ++r) {
    term *= x / r;
    upper += term;
  }
  if (upper < 0.5) return 1.0 - upper;

  // Lower tail directly: P(k, x) = sum_{r>=k} exp(-x) x^r / r!. Positive
  // series, so tiny results keep full relative precision.
  double t = term * x / k;  // r = k
  double lower = 0.0;
  for (int r = k; t > 0.0; ++r) {
    lower += t;
    t *= x / (r + 1);
    if (t < lower * 1e-18) break;
  }
  return lower;
}

}  // namespace detail

double marcum_q1(double a, double b) {
  if (a < 0.0 || b < 0.0) throw std::domain_error("marcum_q1: negative argument");
  if (b == 0.0) return 1.0;

  const double lambda = 0.5 * a * a;  // Poisson mixing rate
  const double y = 0.5 * b * b;
  if (lambda > 700.0) {
    // exp(-lambda) underflows and the ascending mixture loses its footing.
    // Far outside the supported envelope (a <= 30), so refuse rather than
    // return garbage.
    throw std::domain_error("marcum_q1: a too large for series evaluation");
  }
  if (a == 0.0) return std::exp(-y);

  // Q1(a, b) = sum_j Pois(j; lambda) * Q(j+1, y) where Q(j+1, y) is the
  // Erlang survival. Both factor sequences are generated by stable upward
  // recurrences; all terms are positive.
  double w = std::exp(-lambda);          // Poisson weight, j = 0
  double weight_cum = w;
  double s = std::exp(-y);               // exp(-y) y^j / j!, j = 0
  double u = s;                          // Q(j+1, y) = sum_{r<=j} s_r
  double q = w * u;
  for (int j = 1; j < 100000; ++j) {
    w *= lambda / j;
    s *= y / j;
    u += s;
    q += w * u;
    weight_cum += w;
    // Remaining Poisson mass bounds the truncation error since u <= 1.
    if (1.0 - weight_cum < 1e-15 && j > lambda) break;
  }
  return q < 1.0 ? q : 1.0;
}

double rician_power_cdf(double mean_snr, const RicianParams& params, double x) {
  if (mean_snr <= 0.0) throw std::domain_error("rician_power_cdf: mean_snr must be > 0");
  if (x < 0.0) throw std::domain_error("rician_power_cdf: x must be >= 0");
  const double a = params.mu_abs / std::sqrt(0.5 * params.sigma_g_sq);
  const double b = std::sqrt(2.0 * x / (mean_snr * params.sigma_g_sq));
  return 1.0 - marcum_q1(a, b);
}

double sample_rician_power(const RicianParams& params, Rng& rng) {
  double n0 = 0.0;
  double n1 = 0.0;
  rng.next_normal_pair(n0, n1);
  const double s = std::sqrt(0.5 * params.sigma_g_sq);
  const double re = params.mu_abs + s * n0;
  const double im = s * n1;
  return re * re + im * im;
}

double nakagami_power_cdf(const NakagamiParams& params, double x) {
  if (params.m < 1) throw std::domain_error("nakagami_power_cdf: m must be >= 1");
  if (params.mean_snr <= 0.0) throw std::domain_error("nakagami_power_cdf: mean_snr must be > 0");
  if (x < 0.0) throw std::domain_error("nakagami_power_cdf: x must be >= 0");
  return detail::erlang_cdf(params.m, params.m * x / params.mean_snr);
}

void Rng::next_normal_pair(double& n0, double& n1) {
  const double u1 = next_unit_open();
  const double u2 = next_unit_open();
  const double r = std::sqrt(-2.0 * std::log(u1));
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  n0 = r * std::cos(kTwoPi * u2);
  n1 = r * std::sin(kTwoPi * u2);
}

}  // namespace flexd
