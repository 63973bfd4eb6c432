#pragma once

#include <string>

#include "hfemto/config.hpp"

namespace hfemto {

/// Mean achievable rates in nats/s/Hz. tau_m and tau_f are per active UE;
/// the class rates include equal time-sharing when a cell is overloaded.
struct RateReport {
  double tau_m = 0.0;
  double tau_f = 0.0;
  double tau_out = 0.0;
  double tau_in = 0.0;
  double tau_n = 0.0;
  double tau_s = 0.0;
  std::string config_hash;
};

/// E[min(1, cap / U) | U >= 1] for the Poisson load with the given mean.
/// cap = 0 yields 0; mean = 0 yields 1 (a lone UE is never time-shared).
double poisson_share(double mean, int cap);
/// Same for the outside-nonsubscriber load of a macro cell.
double uout_share(double uout_ratio, int cap);

double tau_out(double tau_m, const NetworkConfig& cfg);
double tau_in(double tau_f, const NetworkConfig& cfg);
double tau_s(double tau_f, const NetworkConfig& cfg);
/// Population-weighted nonsubscriber rate. Throws DomainError when neither
/// outside nor inside nonsubscribers exist.
double tau_n(double tau_out_value, double tau_in_value, const NetworkConfig& cfg);

RateReport make_rate_report(double tau_m, double tau_f, const NetworkConfig& cfg);

/// Divides nats by ln 2.
double nats_to_bits(double nats);

}  // namespace hfemto
