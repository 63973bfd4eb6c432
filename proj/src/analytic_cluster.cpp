#include "hfemto/analytic_cluster.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "hfemto/errors.hpp"

namespace hfemto {

namespace {

constexpr int kNodesPerDecade = 32;
constexpr int kLowestNode = -10 * kNodesPerDecade;
constexpr int kHighestNode = 20 * kNodesPerDecade;

QuadratureSpec kernel_spec() { return QuadratureSpec{1e-9, 1e-300, 4000}; }

double node_s(int index) { return std::pow(10.0, static_cast<double>(index) / kNodesPerDecade); }

void require_cluster_rayleigh(const InterferenceContext& ctx, const char* who) {
  if (!ctx.cfg.clustered()) {
    throw MisuseError(std::string(who) + " requires a clustered FAP deployment");
  }
  const auto rate = ctx.fading.exponential_rate();
  if (!rate || *rate != ctx.cfg.mu) {
    throw MisuseError(std::string(who) +
                      " requires exponential interference fading with the serving-link parameter");
  }
}

}  // namespace

ClusterKernelCache::ClusterKernelCache(double alpha, double R_c, double lambda_c_prime,
                                       QuadratureSpec quad)
    : alpha_(alpha), delta_(2.0 / alpha), R_c_(R_c), lambda_c_prime_(lambda_c_prime), quad_(quad) {
  if (!(alpha > 2.0)) throw DomainError("cluster kernel: alpha must exceed 2");
  if (!(R_c > 0.0)) throw DomainError("cluster kernel: R_c must be positive");
  if (!(lambda_c_prime >= 0.0)) throw DomainError("cluster kernel: lambda_c' must be >= 0");
  quad_.check();
}

ClusterKernelCache::ClusterKernelCache(const InterferenceContext& ctx)
    : ClusterKernelCache(ctx.cfg.alpha, ctx.cfg.clusters().R_c, ctx.thinned.lambda_c_prime,
                         ctx.quad) {}

double ClusterKernelCache::radial_antiderivative(double s, double R) const {
  if (s <= 0.0 || R <= 0.0) return 0.0;
  if (alpha_ == 4.0) return 0.5 * std::sqrt(s) * std::atan(R * R / std::sqrt(s));
  const double X = std::pow(R, alpha_) / s;
  const double scale = std::pow(s, delta_) / alpha_;
  if (X > 1.0) return scale * kPi / std::sin(kPi * delta_) - radial_tail(s, R);
  return scale * boost::math::beta(delta_, 1.0 - delta_, X / (1.0 + X));
}

double ClusterKernelCache::radial_tail(double s, double R) const {
  if (s <= 0.0 || std::isinf(R)) return 0.0;
  if (R <= 0.0) return radial_antiderivative(s, kInf);
  if (alpha_ == 4.0) return 0.5 * std::sqrt(s) * std::atan(std::sqrt(s) / (R * R));
  const double X = std::pow(R, alpha_) / s;
  const double scale = std::pow(s, delta_) / alpha_;
  if (X < 1.0) return scale * kPi / std::sin(kPi * delta_) - radial_antiderivative(s, R);
  return scale * boost::math::beta(1.0 - delta_, delta_, 1.0 / (1.0 + X));
}

double ClusterKernelCache::disk_kernel(double s, double d) const {
  if (s <= 0.0) return 0.0;
  const double R = R_c_;
  // Radial mass between two ray distances, taken from whichever side of the
  // kernel shell avoids cancellation.
  auto segment = [&](double lo, double hi) {
    if (std::pow(lo, alpha_) > s) return radial_tail(s, lo) - radial_tail(s, hi);
    return radial_antiderivative(s, hi) - radial_antiderivative(s, lo);
  };
  const auto spec = kernel_spec();
  if (d <= R) {
    auto f = [&](double th) {
      const double sn = std::sin(th);
      const double cs = std::cos(th);
      const double root = std::sqrt(std::max(0.0, R * R - d * d * sn * sn));
      const double t = cs >= 0.0 ? d * cs + root : (R - d) * (R + d) / (root - d * cs);
      return radial_antiderivative(s, t);
    };
    const double front = integrate(f, 0.0, 0.5 * kPi, spec);
    QuadratureSpec back_spec = spec;
    back_spec.abs_tol = std::max(spec.abs_tol, spec.rel_tol * front);
    return 2.0 * (front + integrate(f, 0.5 * kPi, kPi, back_spec));
  }
  // Observation point outside the disk: sin(theta) = (R / d) sin(phi).
  const double q = R / d;
  auto f = [&](double ph) {
    const double sp = std::sin(ph);
    const double ct = std::sqrt(std::max(0.0, 1.0 - q * q * sp * sp));
    const double half = R * std::cos(ph);
    const double mid = d * ct;
    return segment(std::max(0.0, mid - half), mid + half) * half / mid;
  };
  return 2.0 * integrate(f, 0.0, 0.5 * kPi, spec);
}

double ClusterKernelCache::eta(double s, double distance) const {
  if (s <= 0.0 || lambda_c_prime_ == 0.0) return 1.0;
  return std::exp(-lambda_c_prime_ * disk_kernel(s, distance));
}

double ClusterKernelCache::one_minus_eta(double s, double distance) const {
  if (s <= 0.0 || lambda_c_prime_ == 0.0) return 0.0;
  return -std::expm1(-lambda_c_prime_ * disk_kernel(s, distance));
}

double ClusterKernelCache::outer_direct(double s) const {
  if (s <= 0.0 || lambda_c_prime_ == 0.0) return 0.0;
  auto f = [&](double d) { return one_minus_eta(s, d) * d; };
  // Beyond the disk 1 - eta stays near one out to roughly d_star, then decays
  // as d^-alpha.
  const double d_star =
      std::pow(std::max(1.0, lambda_c_prime_ * kPi * R_c_ * R_c_) * s, 1.0 / alpha_);
  const double scale = std::max(R_c_, d_star);
  QuadratureSpec spec = quad_;
  spec.abs_tol = 1e-300;
  const double inside = integrate(f, 0.0, R_c_, spec);
  const double near = integrate(f, R_c_, R_c_ + scale, spec);
  const double far = integrate(f, R_c_ + scale, kInf, spec, R_c_ + scale);
  return 2.0 * kPi * (inside + near + far);
}

double ClusterKernelCache::node_value(int index) const {
  std::shared_future<double> fut;
  std::promise<double> promise;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(index);
    if (it == memo_.end()) {
      fut = promise.get_future().share();
      memo_.emplace(index, fut);
      owner = true;
    } else {
      fut = it->second;
    }
  }
  if (owner) {
    try {
      promise.set_value(outer_direct(node_s(index)));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return fut.get();
}

double ClusterKernelCache::outer(double s) const {
  if (s <= 0.0 || lambda_c_prime_ == 0.0) return 0.0;
  const double x = std::log10(s) * kNodesPerDecade;
  if (x <= kLowestNode) {
    return node_value(kLowestNode) * std::pow(s / node_s(kLowestNode), delta_);
  }
  if (x >= kHighestNode) {
    return node_value(kHighestNode) * std::pow(s / node_s(kHighestNode), delta_);
  }
  int i0 = static_cast<int>(std::floor(x)) - 1;
  i0 = std::clamp(i0, kLowestNode, kHighestNode - 3);
  double result = 0.0;
  for (int j = 0; j < 4; ++j) {
    double weight = 1.0;
    for (int k = 0; k < 4; ++k) {
      if (k != j) weight *= (x - (i0 + k)) / static_cast<double>(j - k);
    }
    result += weight * std::log(node_value(i0 + j));
  }
  return std::exp(result);
}

double ClusterKernelCache::palm_disk(double s, double r) const {
  const double area = kPi * R_c_ * R_c_;
  if (s <= 0.0 || lambda_c_prime_ == 0.0) return area;
  const auto spec = inner_spec(quad_);
  // Integrate eta itself when it is small, its complement otherwise.
  const bool direct = eta(s, 0.0) < 0.5;
  auto weight = [&](double rho) { return direct ? eta(s, rho) : one_minus_eta(s, rho); };
  double sum = 0.0;
  if (r < R_c_) {
    sum += integrate([&](double rho) { return 2.0 * kPi * rho * weight(rho); }, 0.0, R_c_ - r,
                     spec);
  }
  if (r > 0.0) {
    // Circles about z of radius rho cut the disk in an arc for
    // |R_c - r| < rho < R_c + r; rho = c - h cos(psi).
    const double c = std::max(R_c_, r);
    const double h = std::min(R_c_, r);
    auto f = [&](double psi) {
      const double rho = c - h * std::cos(psi);
      if (rho <= 0.0) return 0.0;
      const double arg = std::clamp((rho * rho + r * r - R_c_ * R_c_) / (2.0 * rho * r), -1.0, 1.0);
      return 2.0 * rho * std::acos(arg) * weight(rho) * h * std::sin(psi);
    };
    sum += integrate(f, 0.0, kPi, spec);
  }
  return direct ? sum : area - sum;
}

std::size_t ClusterKernelCache::memo_size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.size();
}

double eta(double s, double distance, const ClusterKernelCache& cache) {
  return cache.eta(s, distance);
}

double cluster_outer(double s, const ClusterKernelCache& cache) { return cache.outer(s); }

double palm_disk(double s, double r, const ClusterKernelCache& cache) {
  return cache.palm_disk(s, r);
}

double zm_cluster(double T, const InterferenceContext& ctx, const ClusterKernelCache& cache) {
  require_cluster_rayleigh(ctx, "zm_cluster");
  if (T <= 0.0) return 0.0;
  const auto& c = ctx.cfg;
  const double lambda_p = c.clusters().lambda_p;
  const double k = 1.0 + (ctx.thinned.lambda_m_prime / c.lambda_m) * varphi(T, c.alpha, ctx.quad);
  const double per_w = 1.0 / (kPi * c.lambda_m);
  auto v_pow = [&](double w) { return std::pow(w * per_w, 0.5 * c.alpha); };
  auto f = [&](double w) {
    const double vp = v_pow(w);
    const double s = T * vp * c.W * c.P_f / c.P_m;
    const double noise = c.mu * T * vp * c.sigma2 / c.P_m;
    return std::exp(-k * w - lambda_p * cache.outer(s) - noise);
  };
  const double k_eff = k + lambda_p * cache.outer(T * v_pow(1.0) * c.W * c.P_f / c.P_m);
  const double scale = 1.0 / k_eff;
  const double head = integrate_from_peak(f, 0.0, 64.0 * scale, scale, ctx.quad);
  const double tail = integrate(f, 64.0 * scale, kInf, ctx.quad, scale);
  return 1.0 - (head + tail);
}

double tau_m_cluster(const InterferenceContext& ctx, const ClusterKernelCache& cache) {
  return rate_from_cdf([&](double T) { return zm_cluster(T, ctx, cache); }, inner_spec(ctx.quad));
}

double zf_cluster(double T, const InterferenceContext& ctx, const ClusterKernelCache& cache) {
  require_cluster_rayleigh(ctx, "zf_cluster");
  if (T <= 0.0) return 0.0;
  const auto& c = ctx.cfg;
  const auto& cl = c.clusters();
  const double delta = 2.0 / c.alpha;
  const double macro = kPi * ctx.thinned.lambda_m_prime *
                       std::pow(c.W * T * c.P_m / c.P_f, delta) * gamma_fn(1.0 + delta) *
                       gamma_fn(1.0 - delta);
  auto exponent = [&](double r) {
    const double ra = std::pow(r, c.alpha);
    const double s = T * ra * c.W * c.W;
    return c.mu * T * ra * c.sigma2 / c.P_f + r * r * macro + cl.lambda_p * cache.outer(s);
  };
  auto f = [&](double r) {
    const double s = T * std::pow(r, c.alpha) * c.W * c.W;
    return std::exp(-exponent(r)) * cache.palm_disk(s, r) * r;
  };
  const double scale = c.R_f / std::sqrt(std::max(1.0, exponent(c.R_f)));
  const double integral = integrate_from_peak(f, 0.0, c.R_f, scale, ctx.quad);
  return 1.0 - 2.0 * integral / (kPi * cl.R_c * cl.R_c * c.R_f * c.R_f);
}

double tau_f_cluster(const InterferenceContext& ctx, const ClusterKernelCache& cache) {
  return rate_from_cdf([&](double T) { return zf_cluster(T, ctx, cache); }, inner_spec(ctx.quad));
}

SinrCurve macro_curve_cluster(const InterferenceContext& ctx, const ClusterKernelCache& cache,
                              const std::vector<double>& thresholds) {
  return make_curve(CurveLabel::MacroCluster, thresholds,
                    [&](double T) { return zm_cluster(T, ctx, cache); });
}

SinrCurve femto_curve_cluster(const InterferenceContext& ctx, const ClusterKernelCache& cache,
                              const std::vector<double>& thresholds) {
  return make_curve(CurveLabel::FemtoCluster, thresholds,
                    [&](double T) { return zf_cluster(T, ctx, cache); });
}

}  // namespace hfemto
