#pragma once

#include "hfemto/config.hpp"
#include "hfemto/curve.hpp"
#include "hfemto/fading.hpp"
#include "hfemto/load.hpp"
#include "hfemto/specfun.hpp"

namespace hfemto {

/// Everything the interference expressions need: the configuration, the
/// thinned interferer intensities derived from it, and the interference
/// fading law.
struct InterferenceContext {
  NetworkConfig cfg;
  ThinnedIntensities thinned;
  FadingModel fading = FadingModel::rayleigh(1.0);
  QuadratureSpec quad{};
};

/// Validates cfg and derives the thinned intensities. Interference fading
/// defaults to Rayleigh with the serving-link parameter cfg.mu.
InterferenceContext make_context(const NetworkConfig& cfg);
InterferenceContext make_context(const NetworkConfig& cfg, const FadingModel& fading);

// Macrocell UEs ---------------------------------------------------------------

/// beta(T, alpha) in the general-fading macro CDF. The femto-tier part is
/// divided by lambda_m', so lambda_m' = 0 throws DomainError.
double beta_factor(double T, double alpha, const InterferenceContext& ctx);

/// Macro-UE SINR CDF for arbitrary interference fading; the fading
/// expectation is taken by quadrature against the density.
double zm_general(double T, const InterferenceContext& ctx);
double tau_m_general(const InterferenceContext& ctx);

/// T^(2/alpha) int_{T^(-2/alpha)}^inf du / (1 + u^(alpha/2)).
double varphi(double T, double alpha, const QuadratureSpec& spec = {});

/// Macro-UE SINR CDF with exponential interference fading.
double zm_rayleigh(double T, const InterferenceContext& ctx);
double tau_m_rayleigh(const InterferenceContext& ctx);

/// Closed forms for alpha = 4, zero noise and exponential fading with the
/// serving-link parameter. Other settings throw MisuseError.
double zm_alpha4(double T, const InterferenceContext& ctx);
double tau_m_alpha4(const InterferenceContext& ctx);

// Femtocell UEs ---------------------------------------------------------------

/// rho(alpha) = -(2 pi mu^(2/a) / a) Gamma(-2/a)
///              (lambda_m' (W P_m/P_f)^(2/a) + lambda_f' W^(4/a)) E[g^(2/a)].
double rho_factor(double alpha, const InterferenceContext& ctx);
/// pi^2/2 (lambda_m' sqrt(W P_m / P_f) + lambda_f' W), Rayleigh and alpha = 4.
double rho_alpha4(const InterferenceContext& ctx);

double zf_general(double T, const InterferenceContext& ctx);
double tau_f_general(const InterferenceContext& ctx);

/// 1 - (1 - e^-x) / x with x = rho(4) sqrt(T) R_f^2.
double zf_alpha4(double T, const InterferenceContext& ctx);
/// 2 int_0^inf (1 - e^-y) / (y^2 + rho(4)^2 R_f^4) dy.
double tau_f_alpha4(const InterferenceContext& ctx);

// Dispatch ------------------------------------------------------------------

/// True when the alpha = 4, noise-free, exponential-fading closed forms apply.
bool closed_forms_apply(const InterferenceContext& ctx);

/// Most specific applicable expression (closed form, then exponential
/// fading corollary, then general).
double zm_ppp(double T, const InterferenceContext& ctx);
double zf_ppp(double T, const InterferenceContext& ctx);
double tau_m_ppp(const InterferenceContext& ctx);
double tau_f_ppp(const InterferenceContext& ctx);

SinrCurve macro_curve_ppp(const InterferenceContext& ctx, const std::vector<double>& thresholds);
SinrCurve femto_curve_ppp(const InterferenceContext& ctx, const std::vector<double>& thresholds);

/// int_0^inf (1 - Z(e^t - 1)) dt, the mean of ln(1 + SINR) from its CDF.
double rate_from_cdf(const std::function<double(double)>& cdf, const QuadratureSpec& spec);

}  // namespace hfemto
