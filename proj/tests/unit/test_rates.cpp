#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "hfemto/config.hpp"
#include "hfemto/errors.hpp"
#include "hfemto/rates.hpp"
#include "hfemto/specfun.hpp"

using namespace hfemto;

TEST_SUITE("rates") {
  TEST_CASE("time-sharing brackets at defaults") {
    const auto c = default_config();
    // truncated sums over the negative binomial and Poisson laws
    CHECK(uout_share(10.0, 20) == doctest::Approx(0.9880174196037453).epsilon(1e-12));
    CHECK(poisson_share(4.71238898038469, 10) == doctest::Approx(0.9987848065244115).epsilon(1e-12));
    CHECK(tau_out(1.0, c) == doctest::Approx(0.9880174196037453).epsilon(1e-12));
    CHECK(tau_in(1.0, c) == doctest::Approx(0.9987848065244115).epsilon(1e-12));
    CHECK(tau_s(1.0, c) == doctest::Approx(0.9987848065244115).epsilon(1e-12));
  }

  TEST_CASE("full report at defaults") {
    const auto r = make_rate_report(1.8819092079955717, 7.925303715041194, default_config());
    CHECK(r.tau_out == doctest::Approx(1.8593590796123127).epsilon(1e-12));
    CHECK(r.tau_in == doctest::Approx(7.915672937674619).epsilon(1e-12));
    CHECK(r.tau_s == doctest::Approx(7.915672937674619).epsilon(1e-12));
    CHECK(r.tau_n == doctest::Approx(6.855466099719676).epsilon(1e-12));
    CHECK(r.config_hash.size() == 16);
  }

  TEST_CASE("limits") {
    CHECK(poisson_share(1e-9, 3) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(poisson_share(0.0, 3) == 1.0);
    CHECK(poisson_share(5.0, 0) == 0.0);
    CHECK(uout_share(1e-9, 20) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(uout_share(0.0, 20) == 1.0);
    CHECK(uout_share(1e6, 20) < 1e-3);
    auto c = default_config();
    c.M_s = 0;
    CHECK(tau_in(5.0, c) == 0.0);
    c.M_s = c.M;
    CHECK(tau_s(5.0, c) == 0.0);
    c = default_config();
    c.lambda_out = 0.0;
    CHECK(tau_out(3.0, c) == 3.0);
  }

  TEST_CASE("tau_n weights") {
    auto c = default_config();
    c.lambda_in = 0.0;
    CHECK(tau_n(2.0, 5.0, c) == doctest::Approx(2.0).epsilon(1e-15));
    c = default_config();
    c.lambda_out = 0.0;
    CHECK(tau_n(2.0, 5.0, c) == doctest::Approx(5.0).epsilon(1e-15));
    c = default_config();
    c.lambda_out = c.lambda_f * c.lambda_in * kPi * c.R_f * c.R_f;
    CHECK(tau_n(2.0, 5.0, c) == doctest::Approx(3.5).epsilon(1e-14));
    c.lambda_out = 0.0;
    c.lambda_in = 0.0;
    CHECK_THROWS_AS(tau_n(2.0, 5.0, c), DomainError);
    const auto r = make_rate_report(2.0, 5.0, c);
    CHECK(r.tau_n == 0.0);
  }

  TEST_CASE("brackets lie in (0, 1]") {
    for (double mean : {0.01, 0.5, 3.0, 12.0, 80.0}) {
      for (int cap : {1, 2, 5, 10, 20}) {
        const double p = poisson_share(mean, cap);
        const double u = uout_share(mean, cap);
        CHECK(p > 0.0);
        CHECK(p <= 1.0);
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
      }
    }
  }

  TEST_CASE("report invariants over M_s") {
    auto c = default_config();
    double prev_s = 1e300;
    double prev_n = -1.0;
    for (int ms = 0; ms <= c.M; ++ms) {
      c.M_s = ms;
      const auto r = make_rate_report(1.9, 7.9, c);
      CHECK(r.tau_out >= 0.0);
      CHECK(r.tau_out <= r.tau_m);
      CHECK(r.tau_in <= r.tau_f);
      CHECK(r.tau_s <= r.tau_f);
      CHECK(r.tau_n >= std::min(r.tau_out, r.tau_in) - 1e-15);
      CHECK(r.tau_n <= std::max(r.tau_out, r.tau_in) + 1e-15);
      CHECK(r.tau_s <= prev_s);
      CHECK(r.tau_n >= prev_n);
      prev_s = r.tau_s;
      prev_n = r.tau_n;
    }
  }

  TEST_CASE("bits") { CHECK(nats_to_bits(std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-15)); }
}
