#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "hfemto/errors.hpp"
#include "hfemto/load.hpp"
#include "hfemto/sim.hpp"

using namespace hfemto;

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(const std::vector<double>& x) {
  Moments m;
  for (double v : x) m.mean += v;
  m.mean /= x.size();
  for (double v : x) m.var += (v - m.mean) * (v - m.mean);
  m.var /= (x.size() - 1);
  return m;
}

SimSpec small_spec(int snapshots, double half_width = 2000.0) {
  SimSpec s;
  s.snapshots = snapshots;
  s.window_half_width = half_width;
  s.seed = 2024;
  return s;
}

}  // namespace

TEST_SUITE("sim") {
  TEST_CASE("torus metric") {
    const Square sq{10.0, true};
    CHECK(sq.distance({-9.0, 0.0}, {9.0, 0.0}) == doctest::Approx(2.0));
    CHECK(sq.distance({0.0, -9.5}, {0.0, 9.5}) == doctest::Approx(1.0));
    const Square flat{10.0, false};
    CHECK(flat.distance({-9.0, 0.0}, {9.0, 0.0}) == doctest::Approx(18.0));
    const Point w = sq.wrapped({12.0, -13.0});
    CHECK(w.x == doctest::Approx(-8.0));
    CHECK(w.y == doctest::Approx(7.0));
  }

  TEST_CASE("ppp sampler counts are Poisson") {
    std::mt19937_64 rng(1);
    const Square sq{200.0, true};
    CHECK(sample_ppp(0.0, sq, rng).empty());
    const double lambda = 1e-4;
    const double mu = lambda * sq.area();
    const int n = 10000;
    std::vector<double> counts;
    for (int i = 0; i < n; ++i) {
      const auto pts = sample_ppp(lambda, sq, rng);
      for (const auto& p : pts) {
        REQUIRE(std::abs(p.x) <= 200.0);
        REQUIRE(std::abs(p.y) <= 200.0);
      }
      counts.push_back(static_cast<double>(pts.size()));
    }
    const auto m = moments(counts);
    CHECK(std::abs(m.mean - mu) <= 3.0 * std::sqrt(mu / n));
    // Var(s^2) ~ (mu + 2 mu^2) / n for Poisson counts
    const double fano_sd = std::sqrt((mu + 2.0 * mu * mu) / n) / mu;
    CHECK(std::abs(m.var / m.mean - 1.0) <= 3.0 * fano_sd);
  }

  TEST_CASE("ppp points are uniform") {
    std::mt19937_64 rng(2);
    const Square sq{100.0, false};
    const auto pts = sample_ppp(0.25, sq, rng);  // about 10^4 points
    const double n = pts.size();
    double left = 0.0;
    for (const auto& p : pts) left += p.x < 0.0 ? 1.0 : 0.0;
    CHECK(std::abs(left - n / 2) <= 3.0 * std::sqrt(n / 4));
  }

  TEST_CASE("layered ppp keeps inner points") {
    std::mt19937_64 a(9);
    std::mt19937_64 b(9);
    const Square inner{100.0, true};
    const auto small = sample_ppp(1e-3, inner, inner, a);
    const auto big = sample_ppp(1e-3, inner, Square{150.0, false}, b);
    REQUIRE(big.size() >= small.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
      CHECK(small[i].x == big[i].x);
      CHECK(small[i].y == big[i].y);
    }
    for (std::size_t i = small.size(); i < big.size(); ++i) {
      CHECK(std::max(std::abs(big[i].x), std::abs(big[i].y)) >= 100.0);
    }
  }

  TEST_CASE("cluster sampler intensity and variance") {
    std::mt19937_64 rng(3);
    const Square sq{1000.0, true};
    CHECK(sample_cluster(0.0, 0.00127, 50.0, sq, rng).empty());
    const double lp = 1e-5;
    const double lc = 0.00127;
    const double rc = 50.0;
    const double c = kPi * rc * rc * lc;
    const double mu = lp * sq.area() * c;
    // Neyman-Scott count variance: lambda_p A E[K^2] with K ~ Poisson(c)
    const double var = lp * sq.area() * (c + c * c);
    const int n = 10000;
    std::vector<double> counts;
    for (int i = 0; i < n; ++i) counts.push_back(static_cast<double>(sample_cluster(lp, lc, rc, sq, rng).size()));
    const auto m = moments(counts);
    CHECK(std::abs(m.mean - mu) <= 3.0 * std::sqrt(var / n));
    // fourth central moment of a compound Poisson count, for the variance test
    const double k2 = c + c * c;
    const double k4 = c + 7 * c * c + 6 * c * c * c + c * c * c * c;
    const double kappa4 = lp * sq.area() * k4;
    const double var_sd = std::sqrt((kappa4 + 2.0 * var * var) / n);
    CHECK(std::abs(m.var - var) <= 3.0 * var_sd);
    CHECK(k2 > 0.0);
  }

  TEST_CASE("cluster sampler in a guard region keeps the intensity") {
    std::mt19937_64 rng(4);
    const Square sq{500.0, false};
    const double lp = 1e-5;
    const double lc = 0.00127;
    const double c = kPi * 2500.0 * lc;
    const double mu = lp * sq.area() * c;
    const int n = 10000;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      for (const auto& p : sample_cluster(lp, lc, 50.0, sq, rng)) {
        REQUIRE(std::abs(p.x) <= 500.0);
        total += 1.0;
      }
    }
    const double var = lp * sq.area() * (c + c * c);
    CHECK(std::abs(total / n - mu) <= 3.0 * std::sqrt(var / n));
  }

  TEST_CASE("cluster pair correlation exceeds one at short range") {
    std::mt19937_64 rng(5);
    const Square sq{1000.0, true};
    double close_pairs = 0.0;
    double poisson_pairs = 0.0;
    const double r = 60.0;
    for (int d = 0; d < 200; ++d) {
      const auto pts = sample_cluster(1e-5, 0.00127, 50.0, sq, rng);
      const double n = pts.size();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          if (sq.distance(pts[i], pts[j]) < r) close_pairs += 1.0;
        }
      }
      poisson_pairs += 0.5 * n * (n - 1.0) * kPi * r * r / sq.area();
    }
    CHECK(close_pairs / poisson_pairs > 1.5);
  }

  TEST_CASE("snapshot loads and channel use") {
    const auto cfg = default_config();
    const auto spec = small_spec(1);
    std::mt19937_64 rng(6);
    const auto snap = build_snapshot(cfg, spec, rng);
    REQUIRE(!snap.mbs.empty());
    for (std::size_t i = 0; i < snap.faps.size(); ++i) {
      int used = 0;
      int shared = 0;
      for (int c = 0; c < cfg.M; ++c) {
        used += snap.fap_uses(i, c);
        shared += (snap.fap_shared[i * snap.words + c / 64] >> (c % 64)) & 1U;
      }
      CHECK(shared == cfg.M_s);
      CHECK(used == std::min(snap.fap_us[i], cfg.M_r()) + std::min(snap.fap_uin[i], cfg.M_s));
    }
    int total_uout = 0;
    for (std::size_t i = 0; i < snap.mbs.size(); ++i) {
      int used = 0;
      for (int c = 0; c < cfg.M; ++c) used += snap.mbs_uses(i, c);
      CHECK(used == std::min(snap.mbs_uout[i], cfg.M));
      total_uout += snap.mbs_uout[i];
    }
    CHECK(total_uout == snap.outside_ues);
  }

  TEST_CASE("closed access uses no shared channels") {
    auto cfg = default_config();
    cfg.M_s = 0;
    std::mt19937_64 rng(7);
    const auto snap = build_snapshot(cfg, small_spec(1, 1000.0), rng);
    for (auto w : snap.fap_shared) CHECK(w == 0);
    for (std::size_t i = 0; i < snap.faps.size(); ++i) {
      int used = 0;
      for (int c = 0; c < cfg.M; ++c) used += snap.fap_uses(i, c);
      CHECK(used == std::min(snap.fap_us[i], cfg.M));
    }
  }

  TEST_CASE("single MBS without interference") {
    auto cfg = default_config();
    const double r = 100.0;
    cfg.sigma2 = cfg.P_m * std::pow(r, -cfg.alpha);  // SINR = h
    Snapshot snap;
    snap.region = Square{2000.0, true};
    snap.window = snap.region;
    snap.mbs = {{r, 0.0}};
    snap.mbs_uout = {5};
    snap.words = 1;
    snap.mbs_channels = {(std::uint64_t{1} << cfg.M) - 1};
    std::mt19937_64 rng(8);
    std::vector<SinrSample> samples;
    for (int i = 0; i < 10000; ++i) {
      const auto s = tagged_sinr(snap, cfg, TaggedTier::Macro, rng);
      REQUIRE(s.i_m == 0.0);
      REQUIRE(s.i_f == 0.0);
      samples.push_back(s);
    }
    const auto curve = empirical_curve(samples, log_grid(), CurveLabel::EmpiricalMacro);
    double worst = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const double T = curve.thresholds[i];
      const double exact = 1.0 - std::exp(-cfg.mu * T * std::pow(r, cfg.alpha) * cfg.sigma2 / cfg.P_m);
      worst = std::max(worst, std::abs(curve.cdf[i] - exact));
    }
    CHECK(worst <= 1.63 / std::sqrt(10000.0));  // 1% Kolmogorov-Smirnov level
  }

  TEST_CASE("zero wall transmission removes femto interference at macro UEs") {
    auto cfg = default_config();
    cfg.W = 0.0;
    std::mt19937_64 rng(9);
    const auto snap = build_snapshot(default_config(), small_spec(1), rng);
    for (int i = 0; i < 100; ++i) CHECK(tagged_sinr(snap, cfg, TaggedTier::Macro, rng).i_f == 0.0);
  }

  TEST_CASE("tagged SINR misuse and empty snapshots") {
    const auto cfg = default_config();
    Snapshot empty;
    empty.region = Square{100.0, true};
    empty.window = empty.region;
    std::mt19937_64 rng(10);
    CHECK_THROWS_AS(tagged_sinr(empty, cfg, TaggedTier::Macro, rng), DomainError);
    CHECK_THROWS_AS(tagged_sinr(empty, cfg, TaggedTier::Both, rng), MisuseError);
  }

  TEST_CASE("sample components are consistent") {
    const auto res = run(default_config(), small_spec(50));
    for (const auto& s : res.macro_samples) {
      CHECK(s.signal >= 0.0);
      CHECK(s.i_m >= 0.0);
      CHECK(s.i_f >= 0.0);
      CHECK(s.sinr == doctest::Approx(s.signal / (s.i_m + s.i_f)).epsilon(1e-14));
    }
  }

  TEST_CASE("one snapshot gives a step function") {
    const auto res = run(default_config(), small_spec(1));
    for (double v : res.macro.cdf) CHECK((v == 0.0 || v == 1.0));
    for (double v : res.femto.cdf) CHECK((v == 0.0 || v == 1.0));
  }

  TEST_CASE("runs are deterministic and independent of worker count") {
    auto spec = small_spec(40);
    const auto a = run(default_cluster_config(), spec);
    spec.workers = 3;
    const auto b = run(default_cluster_config(), spec);
    REQUIRE(a.macro_samples.size() == b.macro_samples.size());
    for (std::size_t i = 0; i < a.macro_samples.size(); ++i) {
      CHECK(a.macro_samples[i].sinr == b.macro_samples[i].sinr);
      CHECK(a.femto_samples[i].sinr == b.femto_samples[i].sinr);
    }
    CHECK(a.macro.cdf == b.macro.cdf);
    CHECK(a.rates.tau_n == b.rates.tau_n);
    spec.seed = 99;
    const auto c = run(default_cluster_config(), spec);
    CHECK(c.macro_samples[0].sinr != a.macro_samples[0].sinr);
  }

  TEST_CASE("snapshot seeds differ") {
    CHECK(snapshot_seed(1, 0) != snapshot_seed(1, 1));
    CHECK(snapshot_seed(1, 0) != snapshot_seed(2, 0));
    CHECK(snapshot_seed(1, 5) == snapshot_seed(1, 5));
  }

  TEST_CASE("invalid specs") {
    auto spec = small_spec(0);
    CHECK_FALSE(spec.validate().empty());
    CHECK_THROWS_AS(run(default_config(), spec), std::invalid_argument);
    spec = small_spec(5);
    spec.thresholds = {1.0, 0.5};
    CHECK_FALSE(spec.validate().empty());
    spec = small_spec(5, 500.0);
    CHECK_FALSE(spec.warnings(default_config()).empty());
    CHECK(small_spec(5).warnings(default_config()).empty());
  }

  TEST_CASE("load statistics and channel marginals over 10^4 snapshots") {
    const auto cfg = default_config();
    auto spec = small_spec(10000, 1000.0);
    spec.tagged_tier = TaggedTier::Macro;
    const auto res = run(cfg, spec);
    const auto& d = res.diagnostics;
    const double faps = d.mean_faps * d.snapshots;
    CHECK(std::abs(d.mean_us - d.expected_us) <= 3.0 * std::sqrt(d.expected_us / faps));
    CHECK(std::abs(d.mean_uin - d.expected_uin) <= 3.0 * std::sqrt(d.expected_uin / faps));
    CHECK(std::abs(d.mean_faps - cfg.lambda_f * 4e6) <= 3.0 * std::sqrt(cfg.lambda_f * 4e6 / d.snapshots));
    CHECK(std::abs(d.mean_mbs - cfg.lambda_m * 4e6) <= 3.0 * std::sqrt(cfg.lambda_m * 4e6 / d.snapshots));
    CHECK(d.busy_f_analytic == doctest::Approx(p_busy_f(cfg)));
    CHECK(std::abs(d.busy_f_z) <= 3.0);
    CHECK(std::abs(d.busy_m_z) <= 3.0);
    CHECK(check_curve(res.macro).empty());
  }

  TEST_CASE("femto UEs see better SINR than macro UEs") {
    const auto res = run(default_config(), small_spec(2000));
    CHECK(check_curve(res.macro).empty());
    CHECK(check_curve(res.femto).empty());
    for (std::size_t i = 0; i < res.macro.size(); ++i) CHECK(res.femto.cdf[i] <= res.macro.cdf[i]);
  }

  TEST_CASE("boundary handling barely matters at the default window") {
    auto spec = small_spec(3000);
    const auto torus = run(default_config(), spec);
    spec.boundary = Boundary::Guard;
    const auto guard = run(default_config(), spec);
    CHECK(sup_distance(torus.macro, guard.macro) < 0.01);
    CHECK(sup_distance(torus.femto, guard.femto) < 0.01);
  }

  TEST_CASE("full geometry changes little") {
    auto spec = small_spec(2000);
    spec.tagged_tier = TaggedTier::Femto;
    const auto centre = run(default_config(), spec);
    spec.full_geometry = true;
    const auto exact = run(default_config(), spec);
    CHECK(sup_distance(centre.femto, exact.femto) < 0.01);
  }
}
