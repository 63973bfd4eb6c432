#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>

namespace hfemto {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tolerances for the adaptive integrator. The estimate is accepted once the
/// summed error bound drops below max(abs_tol, rel_tol * |estimate|).
struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  std::size_t max_subdivisions = 2000;

  /// Throws std::invalid_argument when a tolerance is not positive or
  /// max_subdivisions is zero.
  void check() const;
};

/// Looser spec used for the inner level of nested integrals.
QuadratureSpec inner_spec(const QuadratureSpec& outer = {});

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t subdivisions = 0;
};

using RealFunction = std::function<double(double)>;

// Special functions ---------------------------------------------------------

/// Euler gamma function. Throws DomainError at the poles 0, -1, -2, ...
double gamma_fn(double x);

/// Upper incomplete gamma Gamma(a, x) = int_x^inf t^(a-1) e^-t dt for any real
/// a and x >= 0. Negative a is reached from a positive first argument through
/// Gamma(a, x) = (Gamma(a+1, x) - x^a e^-x) / a. Throws DomainError when
/// x < 0, or x == 0 with a <= 0 (divergent).
double upper_incomplete_gamma(double a, double x);

/// Exponential integral E1(x) = Gamma(0, x), x > 0.
double exp_integral_e1(double x);

// Quadrature ----------------------------------------------------------------

/// Adaptive 21-point Gauss-Kronrod quadrature on [a, b]; b may be +infinity,
/// in which case t = a + scale * (1 - u) / u maps the range onto (0, 1].
/// Throws AccuracyError (with the best estimate) if the tolerance is not met
/// within spec.max_subdivisions intervals.
IntegrationResult integrate_detailed(const RealFunction& f, double a, double b,
                                     const QuadratureSpec& spec = {},
                                     double scale = 1.0);

inline double integrate(const RealFunction& f, double a, double b,
                        const QuadratureSpec& spec = {}, double scale = 1.0) {
  return integrate_detailed(f, a, b, spec, scale).value;
}

/// 2*pi * int_0^r_max f(rho) rho d rho for a radially symmetric integrand.
///
/// With r_max unset the range grows by doubling panels [R, 2R] starting at
/// `initial_radius` until three consecutive panels each contribute less than
/// spec.abs_tol.
double integrate_radial(const RealFunction& f, std::optional<double> r_max,
                        const QuadratureSpec& spec = {},
                        double initial_radius = 1.0);

/// int_a^b f for an integrand concentrated within `scale` of a. The range is
/// cut at a + scale * 8^j so that no panel starts blind to the peak.
double integrate_from_peak(const RealFunction& f, double a, double b, double scale,
                           const QuadratureSpec& spec = {});

}  // namespace hfemto
