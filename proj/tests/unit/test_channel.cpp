#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "flexd/channel.hpp"
#include "oracles.hpp"

using namespace flexd;

namespace {

// Empirical CDF at x of sorted samples.
double ecdf(const std::vector<double>& sorted, double x) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

}  // namespace

TEST_CASE("marcum_q1 boundary values") {
  CHECK(marcum_q1(0.0, 0.0) == 1.0);
  CHECK(marcum_q1(3.7, 0.0) == 1.0);
  CHECK(marcum_q1(0.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
  CHECK(marcum_q1(0.0, 2.0) == doctest::Approx(0.1353352832366127).epsilon(1e-13));
  CHECK_THROWS_AS(marcum_q1(-0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(marcum_q1(1.0, -0.1), std::domain_error);
}

TEST_CASE("marcum_q1 matches quadrature oracle at frozen points") {
  // Values computed by the independent integral oracle.
  CHECK(marcum_q1(1.0, 1.0) == doctest::Approx(0.732879803796820).epsilon(5e-13));
  CHECK(marcum_q1(2.0, 1.0) == doctest::Approx(0.918107696369405).epsilon(5e-13));
  CHECK(marcum_q1(1.0, 2.0) == doctest::Approx(0.269012060035910).epsilon(5e-13));
  CHECK(marcum_q1(8.0, 8.0) == doctest::Approx(0.524983026691178).epsilon(5e-13));
  CHECK(std::abs(marcum_q1(2.5, 7.0) - 5.80861737286e-06) < 1e-12);
}

TEST_CASE("marcum_q1 vs oracle on the contract grid") {
  double worst = 0.0;
  for (int i = 0; i <= 19; ++i) {
    for (int j = 0; j <= 19; ++j) {
      const double a = 10.0 * i / 19.0;
      const double b = 10.0 * j / 19.0;
      worst = std::max(worst, std::abs(marcum_q1(a, b) - oracles::marcum_q1(a, b)));
    }
  }
  CHECK(worst <= 1e-10);

  // Coarser sweep across the full supported envelope.
  for (double a = 0.0; a <= 30.0; a += 6.0) {
    for (double b = 0.0; b <= 30.0; b += 6.0) {
      CHECK(std::abs(marcum_q1(a, b) - oracles::marcum_q1(a, b)) <= 1e-10);
    }
  }
}

TEST_CASE("marcum_q1 monotone in each argument") {
  for (double a = 0.0; a <= 12.0; a += 1.5) {
    double prev = marcum_q1(a, 0.0);
    for (double b = 0.25; b <= 16.0; b += 0.25) {
      const double q = marcum_q1(a, b);
      CHECK(q <= prev + 1e-13);
      prev = q;
    }
  }
  for (double b = 0.5; b <= 12.0; b += 1.5) {
    double prev = marcum_q1(0.0, b);
    for (double a = 0.25; a <= 16.0; a += 0.25) {
      const double q = marcum_q1(a, b);
      CHECK(q >= prev - 1e-13);
      prev = q;
    }
  }
}

TEST_CASE("rician_power_cdf support and composition") {
  const RicianParams fading{1.56, 1.3};
  CHECK(rician_power_cdf(100.0, fading, 0.0) == 0.0);
  CHECK(rician_power_cdf(100.0, fading, 1e6 * 100.0) >= 1.0 - 1e-8);
  CHECK_THROWS_AS(rician_power_cdf(0.0, fading, 1.0), std::domain_error);
  CHECK_THROWS_AS(rician_power_cdf(10.0, fading, -1.0), std::domain_error);

  // The CDF is exactly the stated Marcum composition.
  const double mean = 42.0;
  const double x = 17.0;
  const double a = fading.mu_abs / std::sqrt(0.5 * fading.sigma_g_sq);
  const double b = std::sqrt(2.0 * x / (mean * fading.sigma_g_sq));
  CHECK(rician_power_cdf(mean, fading, x) == 1.0 - marcum_q1(a, b));

  double prev = 0.0;
  for (double xx = 0.0; xx <= 800.0; xx += 4.0) {
    const double f = rician_power_cdf(100.0, fading, xx);
    CHECK(f >= prev - 1e-14);
    prev = f;
  }
}

TEST_CASE("rician_power_cdf vs independent sampling oracle") {
  // Oracle draws with std::mt19937_64 + std::normal_distribution, an entirely
  // separate path from the library sampler.
  const RicianParams fading{1.56, 1.3};
  const double mean = 100.0;
  constexpr int kN = 10'000'000;
  std::mt19937_64 gen(7771);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * fading.sigma_g_sq));
  std::vector<double> samples;
  samples.reserve(kN);
  for (int i = 0; i < kN; ++i) {
    const double re = fading.mu_abs + normal(gen);
    const double im = normal(gen);
    samples.push_back(mean * (re * re + im * im));
  }
  std::sort(samples.begin(), samples.end());
  for (const double x : {25.0, 100.0, 370.0, 900.0}) {
    const double p = rician_power_cdf(mean, fading, x);
    const double se = std::sqrt(p * (1.0 - p) / kN);
    CHECK(std::abs(ecdf(samples, x) - p) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("sample_rician_power moments and limits") {
  SUBCASE("vanishing scatter concentrates at |mu|^2") {
    const RicianParams fading{1.56, 1e-12};
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
      CHECK(sample_rician_power(fading, rng) ==
            doctest::Approx(1.56 * 1.56).epsilon(1e-4));
    }
  }
  SUBCASE("zero LoS degenerates to exponential with mean sigma_g_sq") {
    const RicianParams fading{0.0, 0.8};
    Rng rng(12);
    double sum = 0.0;
    constexpr int kN = 1'000'000;
    for (int i = 0; i < kN; ++i) sum += sample_rician_power(fading, rng);
    CHECK(sum / kN == doctest::Approx(0.8).epsilon(0.01));
  }
  SUBCASE("mean is |mu|^2 + sigma_g_sq") {
    const RicianParams fading{1.56, 1.3};
    Rng rng(13);
    double sum = 0.0;
    constexpr int kN = 1'000'000;
    for (int i = 0; i < kN; ++i) sum += sample_rician_power(fading, rng);
    CHECK(sum / kN == doctest::Approx(3.7336).epsilon(0.01));
  }
}

TEST_CASE("sampler distribution matches analytic CDF (KS)") {
  const RicianParams fading{1.56, 1.3};
  constexpr int kN = 1'000'000;
  Rng rng(99);
  std::vector<double> samples;
  samples.reserve(kN);
  for (int i = 0; i < kN; ++i) samples.push_back(sample_rician_power(fading, rng));
  std::sort(samples.begin(), samples.end());
  double ks = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double f = rician_power_cdf(1.0, fading, samples[static_cast<std::size_t>(i)]);
    ks = std::max(ks, std::abs(f - (i + 1.0) / kN));
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / kN));
  }
  // 1% critical value of the one-sample KS statistic.
  CHECK(ks < 1.6276 / std::sqrt(static_cast<double>(kN)));
}

TEST_CASE("nakagami_power_cdf") {
  CHECK(nakagami_power_cdf({1, 1.0}, 0.0) == 0.0);
  CHECK(nakagami_power_cdf({1, 1.0}, 1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
  CHECK_THROWS_AS(nakagami_power_cdf({0, 1.0}, 1.0), std::domain_error);

  SUBCASE("m = 1 equals the exponential CDF everywhere") {
    for (double x = 0.0; x <= 30.0; x += 0.25) {
      const double expected = -std::expm1(-x / 2.5);
      CHECK(std::abs(nakagami_power_cdf({1, 2.5}, x) - expected) <= 1e-12);
    }
  }

  SUBCASE("m = 3 matches a gamma sampling oracle") {
    // Power ~ Gamma(shape m, scale mean/m); sample as a sum of exponentials.
    const NakagamiParams params{3, 2.0};
    constexpr int kN = 10'000'000;
    std::mt19937_64 gen(424242);
    std::exponential_distribution<double> exp_draw(1.0);
    std::vector<double> samples;
    samples.reserve(kN);
    const double scale = params.mean_snr / params.m;
    for (int i = 0; i < kN; ++i) {
      samples.push_back(scale * (exp_draw(gen) + exp_draw(gen) + exp_draw(gen)));
    }
    std::sort(samples.begin(), samples.end());
    for (const double x : {0.5, 1.0, 2.0, 5.0}) {
      const double p = nakagami_power_cdf(params, x);
      const double se = std::sqrt(p * (1.0 - p) / kN);
      CHECK(std::abs(ecdf(samples, x) - p) <= 3.0 * se + 1e-12);
    }
  }

  SUBCASE("non-decreasing") {
    double prev = 0.0;
    for (double x = 0.0; x <= 12.0; x += 0.1) {
      const double f = nakagami_power_cdf({4, 1.7}, x);
      CHECK(f >= prev - 1e-14);
      prev = f;
    }
  }
}

TEST_CASE("rng streams are deterministic and distinct") {
  Rng a = Rng::for_stream(123, 7);
  Rng b = Rng::for_stream(123, 7);
  Rng c = Rng::for_stream(123, 8);
  bool all_equal = true;
  bool any_diff_c = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    all_equal = all_equal && (va == b.next_u64());
    any_diff_c = any_diff_c || (va != c.next_u64());
  }
  CHECK(all_equal);
  CHECK(any_diff_c);
}
