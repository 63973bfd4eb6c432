#pragma once

#include <vector>

#include "hfemto/config.hpp"

namespace hfemto {

/// Per-cell UE count laws derived from a configuration.
struct LoadDistribution {
  double mean_us = 0.0;     // lambda_s pi R_f^2
  double mean_uin = 0.0;    // lambda_in pi R_f^2
  double uout_ratio = 0.0;  // lambda_out / lambda_m
  int truncation = 0;       // index after which pmf tails are below 1e-12
};

LoadDistribution load_distribution(const NetworkConfig& cfg);

/// Occupancy probabilities of one subchannel and the thinned interferer
/// intensities they induce.
struct ThinnedIntensities {
  double p_busy_f = 0.0;
  double p_busy_m = 0.0;
  double lambda_m_prime = 0.0;
  double lambda_f_prime = 0.0;
  double lambda_c_prime = 0.0;  // zero for PPP deployments
};

/// Approximate density of the area S of a Poisson-Voronoi macro cell.
double voronoi_area_pdf(double S, double lambda_m);

/// P{U_out = i} when U_out is Poisson with mean lambda_out * S and S follows
/// voronoi_area_pdf. The mixture is negative binomial with shape 7/2.
double uout_pmf(int i, double uout_ratio);
double uout_pmf(int i, const NetworkConfig& cfg);

/// Poisson probabilities and cdf.
double poisson_pmf(int i, double mean);
/// P{N <= n} = Gamma(n+1, mean) / n!.
double poisson_cdf(int n, double mean);

/// E[min(N, cap)] for N ~ Poisson(mean) in incomplete-gamma form.
double expected_min_poisson(double mean, int cap);
/// Same quantity by direct truncated summation.
double expected_min_poisson_sum(double mean, int cap);

/// E[min(U_out, cap)] by adaptive truncated summation.
double expected_min_uout(double uout_ratio, int cap);

/// Probability that a given subchannel is in use at an FAP.
double p_busy_f(const NetworkConfig& cfg);
/// Same, by direct truncated summation of the load laws.
double p_busy_f_sum(const NetworkConfig& cfg);
/// Probability that a given subchannel is in use at an MBS.
double p_busy_m(const NetworkConfig& cfg);

ThinnedIntensities thin(const NetworkConfig& cfg);

/// Smallest n with P{N <= n} >= 1 - tail for N ~ Poisson(mean).
int poisson_truncation(double mean, double tail = 1e-12);

}  // namespace hfemto
