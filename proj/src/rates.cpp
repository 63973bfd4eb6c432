#include "hfemto/rates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "hfemto/config_io.hpp"
#include "hfemto/errors.hpp"
#include "hfemto/load.hpp"
#include "hfemto/specfun.hpp"

namespace hfemto {

namespace {

// sum_{i>=1} P{U=i} min(1, cap/i), stopping once the remaining mass is
// below 1e-14 past the cap.
double shared_mass(const std::function<double(int)>& pmf, double p_zero, int cap) {
  double sum = 0.0;
  double cumulative = p_zero;
  for (int i = 1; i < 100'000'000; ++i) {
    const double p = pmf(i);
    cumulative += p;
    sum += (i <= cap) ? p : p * cap / static_cast<double>(i);
    if (i >= cap && 1.0 - cumulative < 1e-14) break;
  }
  return sum;
}

}  // namespace

double poisson_share(double mean, int cap) {
  if (cap <= 0) return 0.0;
  if (mean <= 0.0) return 1.0;
  const double at_least_one = -std::expm1(-mean);
  const double mass = shared_mass([mean](int i) { return poisson_pmf(i, mean); },
                                  std::exp(-mean), cap);
  return std::min(1.0, mass / at_least_one);
}

double uout_share(double ratio, int cap) {
  if (cap <= 0) return 0.0;
  if (ratio <= 0.0) return 1.0;
  const double at_least_one = -std::expm1(3.5 * std::log1p(-ratio / (3.5 + ratio)));
  const double mass =
      shared_mass([ratio](int i) { return uout_pmf(i, ratio); }, uout_pmf(0, ratio), cap);
  return std::min(1.0, mass / at_least_one);
}

double tau_out(double tau_m, const NetworkConfig& cfg) {
  return uout_share(cfg.lambda_out / cfg.lambda_m, cfg.M) * tau_m;
}

double tau_in(double tau_f, const NetworkConfig& cfg) {
  return poisson_share(cfg.lambda_in * kPi * cfg.R_f * cfg.R_f, cfg.M_s) * tau_f;
}

double tau_s(double tau_f, const NetworkConfig& cfg) {
  return poisson_share(cfg.lambda_s * kPi * cfg.R_f * cfg.R_f, cfg.M_r()) * tau_f;
}

double tau_n(double tau_out_value, double tau_in_value, const NetworkConfig& cfg) {
  const double outside = cfg.lambda_out;
  const double inside = cfg.lambda_f * cfg.lambda_in * kPi * cfg.R_f * cfg.R_f;
  if (outside + inside <= 0.0) {
    throw DomainError("tau_n: no nonsubscribers (lambda_out = 0 and lambda_f lambda_in = 0)");
  }
  return (outside * tau_out_value + inside * tau_in_value) / (outside + inside);
}

RateReport make_rate_report(double tau_m_value, double tau_f_value, const NetworkConfig& cfg) {
  RateReport r;
  r.tau_m = tau_m_value;
  r.tau_f = tau_f_value;
  r.tau_out = tau_out(tau_m_value, cfg);
  r.tau_in = tau_in(tau_f_value, cfg);
  r.tau_s = tau_s(tau_f_value, cfg);
  const double inside = cfg.lambda_f * cfg.lambda_in;
  r.tau_n = (cfg.lambda_out + inside > 0.0) ? tau_n(r.tau_out, r.tau_in, cfg) : 0.0;
  r.config_hash = config_hash(cfg);
  return r;
}

double nats_to_bits(double nats) { return nats / std::log(2.0); }

}  // namespace hfemto
