#include "hfemto/analytic_ppp.hpp"

#include <cmath>

#include "hfemto/errors.hpp"

namespace hfemto {

namespace {

// Gamma(1 + d) Gamma(1 - d); equals pi d / sin(pi d).
double gamma_product(double delta) { return gamma_fn(1.0 + delta) * gamma_fn(1.0 - delta); }

// Coefficient of lambda_f' / lambda_m' inside beta: the femto-tier share of
// the macro UE's interference exponent, per unit intensity ratio.
double femto_coefficient(double T, const InterferenceContext& ctx) {
  const auto& c = ctx.cfg;
  const double delta = 2.0 / c.alpha;
  return -(2.0 * std::pow(c.mu * T, delta) / c.alpha) * std::pow(c.W * c.P_f / c.P_m, delta) *
         gamma_fn(-delta) * ctx.fading.fractional_moment(delta);
}

// Macro-tier share of beta: (2 (mu T)^d / a) E[g^d (Gamma(-d, mu T g) - Gamma(-d))].
double macro_beta(double T, const InterferenceContext& ctx) {
  const auto& c = ctx.cfg;
  const double delta = 2.0 / c.alpha;
  const double x = c.mu * T;
  const double tail = ctx.fading.tail_moment(delta, x, inner_spec(ctx.quad));
  const double full = gamma_fn(-delta) * ctx.fading.fractional_moment(delta);
  return (2.0 * std::pow(x, delta) / c.alpha) * (tail - full);
}

// 1 - int_0^inf exp(-k w - noise(w)) dw, with noise(w) = c w^(alpha/2).
double one_minus_laplace_integral(double k, double noise_coef, double alpha,
                                  const QuadratureSpec& spec) {
  if (noise_coef == 0.0) {
    const double integral = integrate([k](double w) { return std::exp(-k * w); }, 0.0, kInf,
                                      spec, 1.0 / k);
    return 1.0 - integral;
  }
  auto f = [&](double w) { return std::exp(-k * w - noise_coef * std::pow(w, 0.5 * alpha)); };
  return 1.0 - integrate(f, 0.0, kInf, spec, 1.0 / k);
}

void require_closed_forms(const InterferenceContext& ctx, const char* who) {
  if (!closed_forms_apply(ctx)) {
    throw MisuseError(std::string(who) +
                      " requires alpha = 4, sigma2 = 0 and exponential interference fading "
                      "with the serving-link parameter");
  }
}

double exponential_fading_rate(const InterferenceContext& ctx, const char* who) {
  const auto rate = ctx.fading.exponential_rate();
  if (!rate) throw MisuseError(std::string(who) + " requires exponential interference fading");
  return *rate;
}

}  // namespace

InterferenceContext make_context(const NetworkConfig& cfg) {
  return make_context(cfg, FadingModel::rayleigh(cfg.mu));
}

InterferenceContext make_context(const NetworkConfig& cfg, const FadingModel& fading) {
  require_valid(cfg);
  InterferenceContext ctx;
  ctx.cfg = cfg;
  ctx.thinned = thin(cfg);
  ctx.fading = fading;
  return ctx;
}

bool closed_forms_apply(const InterferenceContext& ctx) {
  const auto rate = ctx.fading.exponential_rate();
  return ctx.cfg.alpha == 4.0 && ctx.cfg.sigma2 == 0.0 && rate && *rate == ctx.cfg.mu;
}

double rate_from_cdf(const std::function<double(double)>& cdf, const QuadratureSpec& spec) {
  auto f = [&](double t) {
    if (t > 700.0) return 0.0;
    return 1.0 - cdf(std::expm1(t));
  };
  return integrate(f, 0.0, kInf, spec, 1.0);
}

// Macro -----------------------------------------------------------------------

double beta_factor(double T, double alpha, const InterferenceContext& ctx) {
  if (!(T > 0.0)) throw DomainError("beta_factor: T must be positive");
  if (ctx.thinned.lambda_m_prime == 0.0) {
    throw DomainError("beta_factor: lambda_m' = 0 makes the femto ratio undefined");
  }
  InterferenceContext local = ctx;
  local.cfg.alpha = alpha;
  const double ratio = ctx.thinned.lambda_f_prime / ctx.thinned.lambda_m_prime;
  return macro_beta(T, local) + ratio * femto_coefficient(T, local);
}

double zm_general(double T, const InterferenceContext& ctx) {
  if (T <= 0.0) return 0.0;
  const auto& c = ctx.cfg;
  const auto& th = ctx.thinned;
  // Exponent per unit w = pi lambda_m v; the lambda_m' (1 - beta) - lambda_m
  // combination is expanded so that P_busy,m = 0 needs no division.
  const double k = 1.0 - (th.lambda_m_prime / c.lambda_m) * (1.0 - macro_beta(T, ctx)) +
                   (th.lambda_f_prime / c.lambda_m) * femto_coefficient(T, ctx);
  const double noise = c.mu * T * c.sigma2 / c.P_m * std::pow(kPi * c.lambda_m, -0.5 * c.alpha);
  return one_minus_laplace_integral(k, noise, c.alpha, ctx.quad);
}

double tau_m_general(const InterferenceContext& ctx) {
  return rate_from_cdf([&](double T) { return zm_general(T, ctx); }, inner_spec(ctx.quad));
}

double varphi(double T, double alpha, const QuadratureSpec& spec) {
  if (T <= 0.0) return 0.0;
  const double delta = 2.0 / alpha;
  const double half = 0.5 * alpha;
  const double lower = std::pow(T, -delta);
  if (lower >= 1.0) {
    // u = T^(-2/a) x turns the integral into int_1^inf dx / (1 + x^(a/2) / T).
    return integrate([T, half](double x) { return 1.0 / (1.0 + std::pow(x, half) / T); }, 1.0,
                     kInf, spec);
  }
  auto f = [half](double u) { return 1.0 / (1.0 + std::pow(u, half)); };
  return std::pow(T, delta) * (integrate(f, lower, 1.0, spec) + integrate(f, 1.0, kInf, spec));
}

double zm_rayleigh(double T, const InterferenceContext& ctx) {
  if (T <= 0.0) return 0.0;
  const double kappa = ctx.cfg.mu / exponential_fading_rate(ctx, "zm_rayleigh");
  const auto& c = ctx.cfg;
  const auto& th = ctx.thinned;
  const double delta = 2.0 / c.alpha;
  const double k = 1.0 + (th.lambda_m_prime / c.lambda_m) * varphi(kappa * T, c.alpha, ctx.quad) +
                   (th.lambda_f_prime / c.lambda_m) *
                       std::pow(kappa * T * c.W * c.P_f / c.P_m, delta) * gamma_product(delta);
  const double noise = c.mu * T * c.sigma2 / c.P_m * std::pow(kPi * c.lambda_m, -0.5 * c.alpha);
  return one_minus_laplace_integral(k, noise, c.alpha, ctx.quad);
}

double tau_m_rayleigh(const InterferenceContext& ctx) {
  return rate_from_cdf([&](double T) { return zm_rayleigh(T, ctx); }, inner_spec(ctx.quad));
}

double zm_alpha4(double T, const InterferenceContext& ctx) {
  require_closed_forms(ctx, "zm_alpha4");
  if (T <= 0.0) return 0.0;
  const auto& c = ctx.cfg;
  const auto& th = ctx.thinned;
  const double root = std::sqrt(T);
  const double denom = 1.0 + root * std::atan(root) * th.p_busy_m +
                       0.5 * kPi * (th.lambda_f_prime / c.lambda_m) * root *
                           std::sqrt(c.W * c.P_f / c.P_m);
  return 1.0 - 1.0 / denom;
}

double tau_m_alpha4(const InterferenceContext& ctx) {
  require_closed_forms(ctx, "tau_m_alpha4");
  const auto& c = ctx.cfg;
  const auto& th = ctx.thinned;
  const double femto = 0.5 * kPi * (th.lambda_f_prime / c.lambda_m) * std::sqrt(c.W * c.P_f / c.P_m);
  auto f = [&](double y) {
    return 2.0 / (std::tan(y) + (0.5 * kPi - y) * th.p_busy_m + femto);
  };
  return integrate(f, 0.0, 0.5 * kPi, ctx.quad);
}

// Femto -----------------------------------------------------------------------

double rho_factor(double alpha, const InterferenceContext& ctx) {
  const auto& c = ctx.cfg;
  const auto& th = ctx.thinned;
  const double delta = 2.0 / alpha;
  const double intensity = th.lambda_m_prime * std::pow(c.W * c.P_m / c.P_f, delta) +
                           th.lambda_f_prime * std::pow(c.W, 2.0 * delta);
  if (intensity == 0.0) return 0.0;
  return -(2.0 * kPi * std::pow(c.mu, delta) / alpha) * gamma_fn(-delta) * intensity *
         ctx.fading.fractional_moment(delta);
}

double rho_alpha4(const InterferenceContext& ctx) {
  const auto rate = ctx.fading.exponential_rate();
  if (!rate || *rate != ctx.cfg.mu) {
    throw MisuseError("rho_alpha4 requires exponential fading with the serving-link parameter");
  }
  const auto& c = ctx.cfg;
  const auto& th = ctx.thinned;
  return 0.5 * kPi * kPi *
         (th.lambda_m_prime * std::sqrt(c.W * c.P_m / c.P_f) + th.lambda_f_prime * c.W);
}

double zf_general(double T, const InterferenceContext& ctx) {
  if (T <= 0.0) return 0.0;
  const auto& c = ctx.cfg;
  const double delta = 2.0 / c.alpha;
  const double k = rho_factor(c.alpha, ctx) * std::pow(T, delta) * c.R_f * c.R_f;
  const double noise = c.mu * T * std::pow(c.R_f, c.alpha) * c.sigma2 / c.P_f;
  // w = v / R_f^2 on [0, 1].
  auto f = [&](double w) {
    return std::exp(-k * w - (noise == 0.0 ? 0.0 : noise * std::pow(w, 0.5 * c.alpha)));
  };
  return 1.0 - integrate_from_peak(f, 0.0, 1.0, k > 1.0 ? 1.0 / k : 1.0, ctx.quad);
}

double tau_f_general(const InterferenceContext& ctx) {
  return rate_from_cdf([&](double T) { return zf_general(T, ctx); }, inner_spec(ctx.quad));
}

double zf_alpha4(double T, const InterferenceContext& ctx) {
  require_closed_forms(ctx, "zf_alpha4");
  if (T <= 0.0) return 0.0;
  const double x = rho_alpha4(ctx) * std::sqrt(T) * ctx.cfg.R_f * ctx.cfg.R_f;
  if (x == 0.0) return 0.0;
  return 1.0 + std::expm1(-x) / x;
}

double tau_f_alpha4(const InterferenceContext& ctx) {
  require_closed_forms(ctx, "tau_f_alpha4");
  const double a = rho_alpha4(ctx) * ctx.cfg.R_f * ctx.cfg.R_f;
  if (a == 0.0) throw DomainError("tau_f_alpha4: no interference and no noise, rate diverges");
  auto f = [a](double y) { return -std::expm1(-y) / (y * y + a * a); };
  return 2.0 * (integrate(f, 0.0, a, ctx.quad) + integrate(f, a, kInf, ctx.quad, a));
}

// Dispatch --------------------------------------------------------------------

double zm_ppp(double T, const InterferenceContext& ctx) {
  if (closed_forms_apply(ctx)) return zm_alpha4(T, ctx);
  if (ctx.fading.exponential_rate()) return zm_rayleigh(T, ctx);
  return zm_general(T, ctx);
}

double zf_ppp(double T, const InterferenceContext& ctx) {
  if (closed_forms_apply(ctx)) return zf_alpha4(T, ctx);
  return zf_general(T, ctx);
}

double tau_m_ppp(const InterferenceContext& ctx) {
  if (closed_forms_apply(ctx)) return tau_m_alpha4(ctx);
  if (ctx.fading.exponential_rate()) return tau_m_rayleigh(ctx);
  return tau_m_general(ctx);
}

double tau_f_ppp(const InterferenceContext& ctx) {
  if (closed_forms_apply(ctx)) return tau_f_alpha4(ctx);
  return tau_f_general(ctx);
}

SinrCurve macro_curve_ppp(const InterferenceContext& ctx, const std::vector<double>& thresholds) {
  return make_curve(CurveLabel::MacroPPP, thresholds, [&](double T) { return zm_ppp(T, ctx); });
}

SinrCurve femto_curve_ppp(const InterferenceContext& ctx, const std::vector<double>& thresholds) {
  return make_curve(CurveLabel::FemtoPPP, thresholds, [&](double T) { return zf_ppp(T, ctx); });
}

}  // namespace hfemto
