#include "hfemto/load.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hfemto/specfun.hpp"

namespace hfemto {

namespace {

constexpr double kVoronoiShape = 3.5;

// Gamma(n, x) / (n-1)! for integer n >= 1.
double regularized_upper(int n, double x) {
  if (x == 0.0) return 1.0;
  if (n <= 150) return upper_incomplete_gamma(n, x) / std::tgamma(static_cast<double>(n));
  // Large n: sum the Poisson pmf directly, P{N <= n-1}.
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += poisson_pmf(i, x);
  return std::min(1.0, sum);
}

}  // namespace

LoadDistribution load_distribution(const NetworkConfig& cfg) {
  LoadDistribution d;
  const double area = kPi * cfg.R_f * cfg.R_f;
  d.mean_us = cfg.lambda_s * area;
  d.mean_uin = cfg.lambda_in * area;
  d.uout_ratio = cfg.lambda_out / cfg.lambda_m;
  d.truncation = std::max({poisson_truncation(d.mean_us), poisson_truncation(d.mean_uin),
                           cfg.M});
  // Extend until the U_out tail is negligible as well.
  double cumulative = 0.0;
  int i = 0;
  for (; i < 10'000'000; ++i) {
    cumulative += uout_pmf(i, d.uout_ratio);
    if (cumulative >= 1.0 - 1e-12) break;
  }
  d.truncation = std::max(d.truncation, i);
  return d;
}

double voronoi_area_pdf(double S, double lambda_m) {
  if (S <= 0.0) return 0.0;
  const double x = S * lambda_m;
  return 343.0 / 15.0 * std::sqrt(7.0 / (2.0 * kPi)) * std::pow(x, 2.5) *
         std::exp(-3.5 * x) * lambda_m;
}

double uout_pmf(int i, double ratio) {
  if (i < 0) return 0.0;
  if (ratio <= 0.0) return i == 0 ? 1.0 : 0.0;
  const double a = kVoronoiShape;
  const double log_p = kVoronoiShape * std::log(a / (a + ratio)) +
                       i * std::log(ratio / (a + ratio)) + std::lgamma(kVoronoiShape + i) -
                       std::lgamma(kVoronoiShape) - std::lgamma(i + 1.0);
  return std::exp(log_p);
}

double uout_pmf(int i, const NetworkConfig& cfg) {
  return uout_pmf(i, cfg.lambda_out / cfg.lambda_m);
}

double poisson_pmf(int i, double mean) {
  if (i < 0) return 0.0;
  if (mean == 0.0) return i == 0 ? 1.0 : 0.0;
  return std::exp(i * std::log(mean) - mean - std::lgamma(i + 1.0));
}

double poisson_cdf(int n, double mean) {
  if (n < 0) return 0.0;
  if (mean < 0.0) throw std::invalid_argument("poisson_cdf: mean must be >= 0");
  return regularized_upper(n + 1, mean);
}

int poisson_truncation(double mean, double tail) {
  if (mean <= 0.0) return 0;
  double cumulative = 0.0;
  int n = 0;
  for (; n < 100'000'000; ++n) {
    cumulative += poisson_pmf(n, mean);
    if (cumulative >= 1.0 - tail) break;
  }
  return n;
}

double expected_min_poisson(double mean, int cap) {
  if (cap <= 0) return 0.0;
  if (mean == 0.0) return 0.0;
  return cap * (1.0 - regularized_upper(cap + 1, mean)) + mean * regularized_upper(cap, mean);
}

double expected_min_poisson_sum(double mean, int cap) {
  if (cap <= 0 || mean == 0.0) return 0.0;
  double sum = 0.0;
  double cumulative = 0.0;
  for (int i = 0;; ++i) {
    const double p = poisson_pmf(i, mean);
    cumulative += p;
    sum += std::min(i, cap) * p;
    if (i > mean && cumulative >= 1.0 - 1e-15) break;
    if (i > 100'000'000) break;
  }
  return sum;
}

double expected_min_uout(double ratio, int cap) {
  if (cap <= 0 || ratio <= 0.0) return 0.0;
  // E[min(U, c)] = c - sum_{i<c} (c - i) P{U = i}; the sum is finite.
  double deficit = 0.0;
  for (int i = 0; i < cap; ++i) deficit += (cap - i) * uout_pmf(i, ratio);
  return cap - deficit;
}

double p_busy_f(const NetworkConfig& cfg) {
  const auto d = load_distribution(cfg);
  return (expected_min_poisson(d.mean_us, cfg.M_r()) +
          expected_min_poisson(d.mean_uin, cfg.M_s)) /
         cfg.M;
}

double p_busy_f_sum(const NetworkConfig& cfg) {
  const auto d = load_distribution(cfg);
  return (expected_min_poisson_sum(d.mean_us, cfg.M_r()) +
          expected_min_poisson_sum(d.mean_uin, cfg.M_s)) /
         cfg.M;
}

double p_busy_m(const NetworkConfig& cfg) {
  return expected_min_uout(cfg.lambda_out / cfg.lambda_m, cfg.M) / cfg.M;
}

ThinnedIntensities thin(const NetworkConfig& cfg) {
  ThinnedIntensities t;
  t.p_busy_f = p_busy_f(cfg);
  t.p_busy_m = p_busy_m(cfg);
  t.lambda_m_prime = cfg.lambda_m * t.p_busy_m;
  t.lambda_f_prime = cfg.lambda_f * t.p_busy_f;
  if (const auto* c = std::get_if<ClusteredFaps>(&cfg.deployment)) {
    t.lambda_c_prime = c->lambda_c * t.p_busy_f;
  }
  return t;
}

}  // namespace hfemto
