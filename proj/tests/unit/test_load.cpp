#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "hfemto/config.hpp"
#include "hfemto/load.hpp"
#include "hfemto/specfun.hpp"

using namespace hfemto;

TEST_SUITE("load") {
  TEST_CASE("voronoi area pdf") {
    const double lm = 1e-5;
    CHECK(voronoi_area_pdf(0.0, lm) == 0.0);
    const double norm = integrate([&](double S) { return voronoi_area_pdf(S, lm); }, 0.0, kInf, {}, 1.0 / lm);
    const double mean = integrate([&](double S) { return S * voronoi_area_pdf(S, lm); }, 0.0, kInf, {}, 1.0 / lm);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mean * lm == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("uout pmf") {
    const auto c = default_config();
    CHECK(uout_pmf(0, c) == doctest::Approx(std::pow(3.5 / 13.5, 3.5)).epsilon(1e-13));
    CHECK(uout_pmf(0, c) == doctest::Approx(0.008872989457173155).epsilon(1e-12));
    double total = 0.0;
    double mean = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const double p = uout_pmf(i, c);
      total += p;
      mean += i * p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean == doctest::Approx(10.0).epsilon(1e-10));
    CHECK(uout_pmf(0, 0.0) == 1.0);
    CHECK(uout_pmf(3, 0.0) == 0.0);
  }

  TEST_CASE("uout pmf matches the mixture integral") {
    // P{U = i} = int Poisson(i; lambda_out S) f(S) dS.
    const double lm = 1e-5;
    const double lout = 1e-4;
    for (int i = 0; i <= 5; ++i) {
      const double mix = integrate(
          [&](double S) { return poisson_pmf(i, lout * S) * voronoi_area_pdf(S, lm); }, 0.0, kInf, {}, 1.0 / lm);
      CHECK(uout_pmf(i, lout / lm) == doctest::Approx(mix).epsilon(1e-6));
    }
  }

  TEST_CASE("poisson cdf") {
    CHECK(poisson_cdf(0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    for (int n = 0; n < 5; ++n) CHECK(poisson_cdf(n, 0.0) == 1.0);
    CHECK(poisson_cdf(10, 4.712) == doctest::Approx(0.9908183830939745).epsilon(1e-12));
    double sum = 0.0;
    for (int i = 0; i <= 30; ++i) {
      sum += poisson_pmf(i, 12.5);
      CHECK(poisson_cdf(i, 12.5) == doctest::Approx(sum).epsilon(1e-12));
    }
  }

  TEST_CASE("busy probabilities at defaults") {
    const auto c = default_config();
    CHECK(p_busy_f(c) == doctest::Approx(0.46979675614070243).epsilon(1e-11));
    CHECK(p_busy_m(c) == doctest::Approx(0.48344875066357285).epsilon(1e-11));
    CHECK(std::abs(p_busy_f(c) - p_busy_f_sum(c)) <= 1e-10);
  }

  TEST_CASE("busy probability limits") {
    auto c = default_config();
    c.lambda_s = c.lambda_in = 0.0;
    CHECK(p_busy_f(c) == 0.0);
    c = default_config();
    c.lambda_s = c.lambda_in = 1e3 / (kPi * c.R_f * c.R_f);
    CHECK(p_busy_f(c) > 1.0 - 1e-12);
    c = default_config();
    c.lambda_out = 0.0;
    CHECK(p_busy_m(c) == 0.0);
    c.lambda_out = 1000.0 * c.lambda_m;
    CHECK(p_busy_m(c) >= 0.99);
    CHECK(p_busy_m(c) == doctest::Approx(0.9999976232595655).epsilon(1e-9));
  }

  TEST_CASE("closed-form E[min] equals summation on a grid") {
    for (double mean : {0.01, 0.7, 4.712, 20.0, 150.0}) {
      for (int cap : {0, 1, 5, 10, 40}) {
        CHECK(std::abs(expected_min_poisson(mean, cap) - expected_min_poisson_sum(mean, cap)) <= 1e-10);
      }
    }
  }

  TEST_CASE("E[min(N, c)] <= min(E[N], c)") {
    for (double mean : {0.0, 0.3, 3.0, 30.0}) {
      for (int cap : {0, 1, 4, 20}) {
        CHECK(expected_min_poisson(mean, cap) <= std::min(mean, double(cap)) + 1e-12);
        CHECK(expected_min_uout(mean, cap) <= std::min(mean, double(cap)) + 1e-12);
      }
    }
  }

  TEST_CASE("busy probabilities nondecreasing in load") {
    auto c = default_config();
    double prev_f = -1.0;
    double prev_m = -1.0;
    for (double k : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
      c.lambda_s = c.lambda_in = 0.015 * k;
      c.lambda_out = 1e-4 * k;
      const double f = p_busy_f(c);
      const double m = p_busy_m(c);
      CHECK(f >= prev_f - 1e-15);
      CHECK(m >= prev_m - 1e-15);
      prev_f = f;
      prev_m = m;
    }
  }

  TEST_CASE("thinning") {
    const auto c = default_config();
    const auto t = thin(c);
    CHECK(t.lambda_f_prime == doctest::Approx(1e-4 * p_busy_f(c)).epsilon(1e-15));
    CHECK(t.lambda_m_prime == doctest::Approx(1e-5 * p_busy_m(c)).epsilon(1e-15));
    CHECK(t.lambda_c_prime == 0.0);
    const auto k = default_cluster_config();
    const auto tk = thin(k);
    CHECK(tk.lambda_c_prime == doctest::Approx(0.00127 * p_busy_f(k)).epsilon(1e-15));
    CHECK(k.clusters().lambda_p == 1e-5);
    auto e = c;
    e.lambda_s = e.lambda_in = 0.0;
    CHECK(thin(e).lambda_f_prime == 0.0);
  }

  TEST_CASE("load distribution") {
    const auto d = load_distribution(default_config());
    CHECK(d.mean_us == doctest::Approx(4.71238898038469).epsilon(1e-14));
    CHECK(d.mean_uin == doctest::Approx(4.71238898038469).epsilon(1e-14));
    CHECK(d.uout_ratio == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(poisson_cdf(d.truncation, d.mean_us) >= 1.0 - 1e-12);
  }
}
