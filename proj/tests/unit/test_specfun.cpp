#include <cmath>
#include <random>

#include "doctest.h"
#include "hfemto/errors.hpp"
#include "hfemto/specfun.hpp"

using namespace hfemto;

TEST_SUITE("specfun") {
  TEST_CASE("gamma at known points") {
    CHECK(gamma_fn(0.5) == doctest::Approx(1.772453850905516).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(gamma_fn(1.5) * gamma_fn(0.5) == doctest::Approx(kPi / 2).epsilon(1e-13));
    CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(kPi)).epsilon(1e-13));
  }

  TEST_CASE("gamma poles throw") {
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-2.0), DomainError);
  }

  TEST_CASE("upper incomplete gamma") {
    CHECK(upper_incomplete_gamma(1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(upper_incomplete_gamma(0.5, 0.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    // scipy quad of int_1^inf t^-1.5 e^-t dt
    CHECK(upper_incomplete_gamma(-0.5, 1.0) == doctest::Approx(0.17814771178156072).epsilon(1e-12));
    CHECK_THROWS_AS(upper_incomplete_gamma(-0.5, 0.0), DomainError);
    CHECK_THROWS_AS(upper_incomplete_gamma(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(upper_incomplete_gamma(1.0, -1.0), DomainError);
  }

  TEST_CASE("incomplete gamma agrees with quadrature") {
    const double q = integrate([](double t) { return std::pow(t, -1.5) * std::exp(-t); }, 1.0, kInf);
    CHECK(q == doctest::Approx(upper_incomplete_gamma(-0.5, 1.0)).epsilon(1e-9));
  }

  TEST_CASE("recurrence holds for negative first argument") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(-1.0, 0.0);
    std::uniform_real_distribution<double> ux(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
      double a = ua(rng);
      if (a == 0.0) a = -0.5;
      const double x = ux(rng);
      const double lhs = a * upper_incomplete_gamma(a, x) + std::pow(x, a) * std::exp(-x);
      const double rhs = upper_incomplete_gamma(a + 1.0, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }

  TEST_CASE("e1") {
    CHECK(exp_integral_e1(1.0) == doctest::Approx(0.21938393439552062).epsilon(1e-13));
  }

  TEST_CASE("integrate basic") {
    CHECK(integrate([](double t) { return std::exp(-t); }, 0.0, kInf) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate([](double u) { return 1.0 / (1.0 + u * u); }, 1.0, kInf) ==
          doctest::Approx(kPi / 4).epsilon(1e-10));
    CHECK(integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-8));
  }

  TEST_CASE("integrate is linear") {
    auto f = [](double t) { return std::exp(-t) * std::cos(t); };
    const double base = integrate(f, 0.0, kInf);
    for (double c : {-3.0, 0.5, 7.0}) {
      CHECK(integrate([&](double t) { return c * f(t); }, 0.0, kInf) == doctest::Approx(c * base).epsilon(1e-9));
    }
  }

  TEST_CASE("integrate reports non-convergence") {
    QuadratureSpec spec;
    spec.max_subdivisions = 2;
    spec.rel_tol = 1e-14;
    spec.abs_tol = 1e-300;
    CHECK_THROWS_AS(integrate([](double t) { return std::sin(1.0 / t); }, 1e-6, 1.0, spec), AccuracyError);
  }

  TEST_CASE("bad quadrature spec rejected") {
    QuadratureSpec spec;
    spec.rel_tol = 0.0;
    CHECK_THROWS_AS(spec.check(), std::invalid_argument);
    spec = {};
    spec.max_subdivisions = 0;
    CHECK_THROWS_AS(spec.check(), std::invalid_argument);
  }

  TEST_CASE("radial integrals") {
    CHECK(integrate_radial([](double r) { return std::exp(-kPi * r * r); }, std::nullopt) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(integrate_radial([](double) { return 1.0; }, 50.0) == doctest::Approx(kPi * 2500.0).epsilon(1e-12));
    CHECK(integrate_radial([](double) { return 0.0; }, std::nullopt) == 0.0);
  }

  TEST_CASE("radial integral grows with range for decreasing integrand") {
    auto f = [](double r) { return 1.0 / (1.0 + r * r * r * r); };
    double prev = 0.0;
    for (double R : {1.0, 2.0, 5.0, 10.0, 100.0, 1000.0}) {
      const double v = integrate_radial(f, R);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }

  TEST_CASE("integrate from peak finds narrow peaks") {
    const double s = 1e-3;
    auto f = [&](double x) { return std::exp(-x / s) / s; };
    CHECK(integrate_from_peak(f, 0.0, 1e6, s) == doctest::Approx(1.0).epsilon(1e-9));
  }
}
