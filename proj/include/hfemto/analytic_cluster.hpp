#pragma once

#include <future>
#include <map>
#include <memory>
#include <mutex>

#include "hfemto/analytic_ppp.hpp"

namespace hfemto {

/// Interference kernel of one thinned cluster of radius R_c and daughter
/// intensity lambda_c', seen from a point at a given distance from the
/// cluster center.
///
/// eta(s, d) = exp(-lambda_c' int_{disk} dy / (1 + |x + y|^alpha / s)), |x| = d.
///
/// The disk integral is taken in polar coordinates about the observation
/// point, where the radial part has a closed form, leaving one angular
/// quadrature. outer(s) = int_{R^2} (1 - eta(s, x)) dx is memoized on a
/// log-spaced grid in s (32 nodes per decade, cubic interpolation in
/// log-log) and extrapolated as s^(2/alpha) outside [1e-10, 1e20].
/// Lookups are thread safe; each grid node is computed once.
class ClusterKernelCache {
 public:
  ClusterKernelCache(double alpha, double R_c, double lambda_c_prime, QuadratureSpec quad = {});
  /// From a clustered context; throws MisuseError for PPP deployments.
  explicit ClusterKernelCache(const InterferenceContext& ctx);

  double alpha() const { return alpha_; }
  double R_c() const { return R_c_; }
  double lambda_c_prime() const { return lambda_c_prime_; }

  /// int_0^R rho / (1 + rho^alpha / s) d rho.
  double radial_antiderivative(double s, double R) const;
  /// int_R^inf rho / (1 + rho^alpha / s) d rho.
  double radial_tail(double s, double R) const;

  /// int_{disk} dy / (1 + |x + y|^alpha / s) with |x| = distance.
  double disk_kernel(double s, double distance) const;
  double eta(double s, double distance) const;
  /// 1 - eta without cancellation.
  double one_minus_eta(double s, double distance) const;

  /// Direct evaluation of int_{R^2} (1 - eta(s, x)) dx.
  double outer_direct(double s) const;
  /// Memoized outer integral.
  double outer(double s) const;

  /// int_{disk} eta(s, |y - z|) dy with |z| = r.
  double palm_disk(double s, double r) const;

  std::size_t memo_size() const;

 private:
  double node_value(int index) const;

  double alpha_;
  double delta_;
  double R_c_;
  double lambda_c_prime_;
  QuadratureSpec quad_;

  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_future<double>> memo_;
};

/// Free-function forms of the cache evaluators.
double eta(double s, double distance, const ClusterKernelCache& cache);
double cluster_outer(double s, const ClusterKernelCache& cache);
double palm_disk(double s, double r, const ClusterKernelCache& cache);

/// Macro-UE SINR CDF with clustered FAPs and exponential interference
/// fading. Throws MisuseError for PPP deployments or non-exponential fading.
double zm_cluster(double T, const InterferenceContext& ctx, const ClusterKernelCache& cache);
double tau_m_cluster(const InterferenceContext& ctx, const ClusterKernelCache& cache);

/// Femto-UE SINR CDF with clustered FAPs; the serving FAP's own cluster is
/// included through the Palm distribution of the cluster process.
double zf_cluster(double T, const InterferenceContext& ctx, const ClusterKernelCache& cache);
double tau_f_cluster(const InterferenceContext& ctx, const ClusterKernelCache& cache);

SinrCurve macro_curve_cluster(const InterferenceContext& ctx, const ClusterKernelCache& cache,
                              const std::vector<double>& thresholds);
SinrCurve femto_curve_cluster(const InterferenceContext& ctx, const ClusterKernelCache& cache,
                              const std::vector<double>& thresholds);

}  // namespace hfemto
