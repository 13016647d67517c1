#include "flexd/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "flexd/errors.hpp"

namespace flexd {

namespace {

void validate_inputs(const OutageInputs& in) {
  if (in.omega_k < 0.0 || in.omega_l < 0.0) {
    throw std::domain_error("outage inputs: cut levels must be >= 0");
  }
  if (in.dl_mean_k <= 0.0 || in.dl_mean_l <= 0.0) {
    throw std::domain_error("outage inputs: downlink means must be > 0");
  }
}

// A coefficient of the series: 1 / (mean * sigma_g_sq).
double a_coeff(double dl_mean, const RicianParams& fading) {
  return 1.0 / (dl_mean * fading.sigma_g_sq);
}

// The downlink survival Q1(alpha, sqrt(2 A l)) is below ~1e-31 beyond this
// point, so larger cut levels are indistinguishable from infinity.
double survival_support(double a, const RicianParams& fading) {
  const double alpha = fading.mu_abs / std::sqrt(0.5 * fading.sigma_g_sq);
  const double b = alpha + 12.0;
  return 0.5 * b * b / a;
}

// Series weights w_m = e^-c c^m / m!, m = 0..M. Throws if the truncation
// leaves non-negligible weight behind.
std::vector<double> series_weights(double c, int truncation) {
  if (truncation < 1) throw std::domain_error("series truncation must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(truncation) + 1);
  w[0] = std::exp(-c);
  double total = w[0];
  for (int m = 1; m <= truncation; ++m) {
    w[static_cast<std::size_t>(m)] = w[static_cast<std::size_t>(m) - 1] * c / m;
    total += w[static_cast<std::size_t>(m)];
  }
  // Neglected weight bounds the mean error by (1 - total) * omega_max; a
  // 1e-4 deficit is orders below the validation tolerances, while genuine
  // under-truncation (c beyond M) fails loudly.
  if (1.0 - total > 1e-4) {
    throw SeriesError(
        "series truncation " + std::to_string(truncation) +
            " too small for LoS-to-scatter ratio; cumulative weight " + std::to_string(total),
        {total, c});
  }
  return w;
}

}  // namespace

const char* to_string(OutageRegion region) {
  switch (region) {
    case OutageRegion::Product: return "product";
    case OutageRegion::FlowKDownlink: return "flow-k-dl";
    case OutageRegion::FlowLDownlink: return "flow-l-dl";
    case OutageRegion::Saturated: return "saturated";
  }
  return "?";
}

double threshold_from_rate(double delta_bps, double bandwidth_hz) {
  if (delta_bps < 0.0) throw std::domain_error("threshold_from_rate: delta must be >= 0");
  if (bandwidth_hz <= 0.0) throw std::domain_error("threshold_from_rate: bandwidth must be > 0");
  return std::exp2(2.0 * delta_bps / bandwidth_hz) - 1.0;
}

OutageRegion outage_region(double zeta, const OutageInputs& in) {
  validate_inputs(in);
  if (zeta < 0.0) throw std::domain_error("outage_region: zeta must be >= 0");
  const double omega_min = std::min(in.omega_k, in.omega_l);
  const double omega_max = std::max(in.omega_k, in.omega_l);
  if (zeta >= omega_max) return OutageRegion::Saturated;
  if (zeta < omega_min) return OutageRegion::Product;
  // Exactly one flow is capped below zeta; the other's downlink still varies.
  return in.omega_l <= zeta ? OutageRegion::FlowKDownlink : OutageRegion::FlowLDownlink;
}

double outage_probability_from_cdfs(double zeta, double omega_k, double omega_l,
                                    double cdf_k_at_zeta, double cdf_l_at_zeta) {
  if (zeta < 0.0 || omega_k < 0.0 || omega_l < 0.0) {
    throw std::domain_error("outage_probability_from_cdfs: inputs must be >= 0");
  }
  if (cdf_k_at_zeta < 0.0 || cdf_k_at_zeta > 1.0 || cdf_l_at_zeta < 0.0 ||
      cdf_l_at_zeta > 1.0) {
    throw std::domain_error("outage_probability_from_cdfs: CDF values must be in [0,1]");
  }
  if (zeta >= std::max(omega_k, omega_l)) return 1.0;
  if (zeta < std::min(omega_k, omega_l)) return cdf_k_at_zeta * cdf_l_at_zeta;
  return omega_l <= zeta ? cdf_k_at_zeta : cdf_l_at_zeta;
}

double outage_probability(double zeta, const OutageInputs& in) {
  switch (outage_region(zeta, in)) {
    case OutageRegion::Saturated:
      return 1.0;
    case OutageRegion::Product:
      return rician_power_cdf(in.dl_mean_k, in.fading, zeta) *
             rician_power_cdf(in.dl_mean_l, in.fading, zeta);
    case OutageRegion::FlowKDownlink:
      return rician_power_cdf(in.dl_mean_k, in.fading, zeta);
    case OutageRegion::FlowLDownlink:
      return rician_power_cdf(in.dl_mean_l, in.fading, zeta);
  }
  throw std::logic_error("outage_probability: unreachable");
}

double single_flow_outage(double zeta, double omega, double dl_mean,
                          const RicianParams& fading) {
  if (zeta < 0.0) throw std::domain_error("single_flow_outage: zeta must be >= 0");
  if (omega < 0.0) throw std::domain_error("single_flow_outage: omega must be >= 0");
  if (zeta >= omega) return 1.0;
  return rician_power_cdf(dl_mean, fading, zeta);
}

double no_backlog_outage(double zeta, double dl_mean, const RicianParams& fading) {
  if (zeta < 0.0) throw std::domain_error("no_backlog_outage: zeta must be >= 0");
  return rician_power_cdf(dl_mean, fading, zeta);
}

double phi(int m, double a, double s) {
  if (m < 0) throw std::domain_error("phi: m must be >= 0");
  if (a <= 0.0) throw std::domain_error("phi: A must be > 0");
  if (s < 0.0) throw std::domain_error("phi: S must be >= 0");
  if (s == 0.0) return 0.0;
  const double x = a * s;
  double sum = 0.0;
  for (int i = 0; i <= m; ++i) {
    sum += detail::erlang_cdf(i + 1, x);
  }
  return sum / a;
}

double psi(int m, int n, double a1, double a2, double s) {
  if (m < 0 || n < 0) throw std::domain_error("psi: m, n must be >= 0");
  if (a1 <= 0.0 || a2 <= 0.0) throw std::domain_error("psi: A values must be > 0");
  if (s < 0.0) throw std::domain_error("psi: S must be >= 0");
  if (s == 0.0) return 0.0;

  const double b = a1 + a2;
  const double p1 = a1 / b;
  const double p2 = a2 / b;
  const double x = b * s;

  // P(i+j+1, B S) for every needed order.
  std::vector<double> erlang(static_cast<std::size_t>(m + n) + 1);
  for (int k = 0; k <= m + n; ++k) {
    erlang[static_cast<std::size_t>(k)] = detail::erlang_cdf(k + 1, x);
  }

  double sum = 0.0;
  for (int i = 0; i <= m; ++i) {
    // comb(i + j, i) p1^i p2^j is a binomial pmf, so every coefficient stays
    // in [0, 1] and nothing overflows.
    double coeff = std::pow(p1, i);  // j = 0 term: comb(i, i) p1^i
    for (int j = 0; j <= n; ++j) {
      if (j > 0) coeff *= p2 * static_cast<double>(i + j) / static_cast<double>(j);
      sum += coeff * erlang[static_cast<std::size_t>(i + j)];
    }
  }
  return sum / b;
}

namespace {

// Integral form behind the mean: the double series evaluated at S with both
// flows active. a_y pairs with the m index, a_z with n.
double crossed_tail_sum(const std::vector<double>& w, double c, double s, double a_y,
                        double a_z, const SeriesControls& ctl) {
  if (s == 0.0) return 0.0;
  const int big_m = ctl.truncation;

  std::vector<double> phi_y(static_cast<std::size_t>(big_m) + 1);
  std::vector<double> phi_z(static_cast<std::size_t>(big_m) + 1);
  {
    const double xy = a_y * s;
    const double xz = a_z * s;
    double sum_y = 0.0;
    double sum_z = 0.0;
    for (int i = 0; i <= big_m; ++i) {
      sum_y += detail::erlang_cdf(i + 1, xy);
      sum_z += detail::erlang_cdf(i + 1, xz);
      phi_y[static_cast<std::size_t>(i)] = sum_y / a_y;
      phi_z[static_cast<std::size_t>(i)] = sum_z / a_z;
    }
  }

  const double e2c = std::exp(-2.0 * c);
  double inner = 0.0;
  for (int m = 0; m <= big_m; ++m) {
    double row = 0.0;
    for (int n = 0; n <= big_m; ++n) {
      double weight;
      if (ctl.exponent == SeriesExponent::SumMN) {
        weight = w[static_cast<std::size_t>(m)] * w[static_cast<std::size_t>(n)];
      } else {
        weight = e2c * std::pow(c, static_cast<double>(m) * n) /
                 (std::tgamma(m + 1.0) * std::tgamma(n + 1.0));
      }
      if (weight == 0.0) continue;
      const double bracket = s - phi_y[static_cast<std::size_t>(m)] -
                             phi_z[static_cast<std::size_t>(n)] + psi(m, n, a_y, a_z, s);
      row += weight * bracket;
    }
    inner += row;
    if (ctl.exponent == SeriesExponent::SumMN &&
        w[static_cast<std::size_t>(m)] * s < ctl.term_tolerance * std::abs(inner) && m > c) {
      break;
    }
  }
  return s - inner;
}

// Integral of one flow's survival over [lo, hi] via the Phi series.
double survival_integral(const std::vector<double>& w, double a, double lo, double hi,
                         const SeriesControls& ctl) {
  if (hi <= lo) return 0.0;
  const double c_mode = -std::log(w[0]);  // mixing rate; weights peak near it
  double total = 0.0;
  for (int m = 0; m <= ctl.truncation; ++m) {
    const double term =
        w[static_cast<std::size_t>(m)] * (phi(m, a, hi) - phi(m, a, lo));
    total += term;
    if (term < ctl.term_tolerance * total && m > c_mode) break;
  }
  return total;
}

}  // namespace

double mean_system_sinr(const OutageInputs& in, const SeriesControls& ctl) {
  validate_inputs(in);
  const double c = in.fading.mu_abs * in.fading.mu_abs / in.fading.sigma_g_sq;
  const auto w = series_weights(c, ctl.truncation);

  const double a_k = a_coeff(in.dl_mean_k, in.fading);
  const double a_l = a_coeff(in.dl_mean_l, in.fading);
  const double omega_k = std::min(in.omega_k, survival_support(a_k, in.fading));
  const double omega_l = std::min(in.omega_l, survival_support(a_l, in.fading));

  const double omega_min = std::min(omega_k, omega_l);
  const double omega_max = std::max(omega_k, omega_l);
  // Past omega_min the flow with the smaller cut is frozen; the tail integral
  // continues with the other flow's downlink law.
  const double a_tail = omega_l >= omega_k ? a_l : a_k;

  const double f_part = crossed_tail_sum(w, c, omega_min, a_l, a_k, ctl);
  const double g_part = survival_integral(w, a_tail, omega_min, omega_max, ctl);
  double mean = f_part + g_part;

  if (!std::isfinite(mean) || mean < -1e-9 * std::max(1.0, omega_max)) {
    throw SeriesError("mean_system_sinr: non-finite or negative intermediate "
                      "(series variant inconsistent with inputs)",
                      {f_part, g_part});
  }
  return std::clamp(mean, 0.0, std::max(in.omega_k, in.omega_l));
}

double mean_single_flow_sinr(double omega, double dl_mean, const RicianParams& fading,
                             const SeriesControls& ctl) {
  if (omega < 0.0) throw std::domain_error("mean_single_flow_sinr: omega must be >= 0");
  if (dl_mean <= 0.0) throw std::domain_error("mean_single_flow_sinr: dl_mean must be > 0");
  const double c = fading.mu_abs * fading.mu_abs / fading.sigma_g_sq;
  const auto w = series_weights(c, ctl.truncation);
  const double a = a_coeff(dl_mean, fading);
  const double s = std::min(omega, survival_support(a, fading));
  const double mean = survival_integral(w, a, 0.0, s, ctl);
  return std::clamp(mean, 0.0, omega);
}

double energy_efficiency_bound(double mean_sinr, double bandwidth_hz, double total_power_w) {
  if (total_power_w <= 0.0) {
    throw std::domain_error("energy_efficiency_bound: total power must be > 0");
  }
  if (mean_sinr < 0.0) throw std::domain_error("energy_efficiency_bound: mean SINR must be >= 0");
  return 0.5 * bandwidth_hz / total_power_w * std::log2(1.0 + mean_sinr);
}

double multiuser_outage(std::span<const double> per_user_cdf) {
  double product = 1.0;
  for (const double f : per_user_cdf) {
    if (f < 0.0 || f > 1.0) throw std::domain_error("multiuser_outage: CDF values must be in [0,1]");
    product *= f;
  }
  return product;
}

double multihop_cdf(std::span<const double> per_hop_cdf) {
  double survival = 1.0;
  for (const double f : per_hop_cdf) {
    if (f < 0.0 || f > 1.0) throw std::domain_error("multihop_cdf: CDF values must be in [0,1]");
    survival *= 1.0 - f;
  }
  // Exact single-hop identity (1 - (1 - f) loses bits).
  if (per_hop_cdf.size() == 1) return per_hop_cdf.front();
  return 1.0 - survival;
}

}  // namespace flexd
