#include "hfemto/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "hfemto/errors.hpp"

namespace hfemto {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Series for the regularized lower incomplete gamma times Gamma(a):
// gamma(a, x) = x^a e^-x sum_n x^n / (a (a+1) ... (a+n)).
double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::exp(a * std::log(x) - x);
}

// Modified Lentz continued fraction for Gamma(a, x); valid for any real a
// once x is comfortably away from zero.
double upper_gamma_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(a * std::log(x) - x) * h;
}

double upper_gamma_positive(double a, double x) {
  if (x == 0.0) return std::tgamma(a);
  if (x < a + 1.0) return std::tgamma(a) - lower_gamma_series(a, x);
  return upper_gamma_cf(a, x);
}

// Gauss-Kronrod 21 nodes (positive half, last entry is the centre).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525520137, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_21(const RealFunction& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    kronrod += kWgk[j] * (f1[j] + f2[j]);
    abs_sum += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double value = kronrod * half;
  const double res_abs = abs_sum * std::abs(half);
  const double res_asc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(err, 50.0 * kEps * res_abs);
  }
  if (!std::isfinite(value)) {
    throw AccuracyError("integrand is not finite on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]",
                        value, kInf);
  }
  return {a, b, value, err};
}

IntegrationResult adaptive(const RealFunction& f, double a, double b,
                           const QuadratureSpec& spec) {
  std::priority_queue<Panel> heap;
  Panel first = gauss_kronrod_21(f, a, b);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  std::size_t evals = 21;
  std::size_t panels = 1;
  auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  while (total_err > target()) {
    if (panels >= spec.max_subdivisions) {
      throw AccuracyError("adaptive quadrature did not converge", total, total_err);
    }
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Interval collapsed to floating-point resolution; nothing left to refine.
    if (mid <= worst.a || mid >= worst.b) break;
    heap.pop();
    const Panel left = gauss_kronrod_21(f, worst.a, mid);
    const Panel right = gauss_kronrod_21(f, mid, worst.b);
    evals += 42;
    ++panels;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    // Recompute occasionally to keep the running sums free of drift.
    if (panels % 64 == 0) {
      total = 0.0;
      total_err = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, total_err, evals, panels};
}

}  // namespace

void QuadratureSpec::check() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw std::invalid_argument("max_subdivisions must be at least 1");
  }
}

QuadratureSpec inner_spec(const QuadratureSpec& outer) {
  QuadratureSpec s = outer;
  s.rel_tol = std::max(outer.rel_tol, 1e-6);
  return s;
}

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x)) {
    throw DomainError("gamma_fn: pole at non-positive integer " + std::to_string(x));
  }
  return std::tgamma(x);
}

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw DomainError("exp_integral_e1: x must be positive");
  if (x <= 1.0) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= -x / k;
      const double add = -term / k;
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
  }
  return upper_gamma_cf(0.0, x);
}

double upper_incomplete_gamma(double a, double x) {
  if (!(x >= 0.0)) throw DomainError("upper_incomplete_gamma: x must be >= 0");
  if (a > 0.0) return upper_gamma_positive(a, x);
  if (x == 0.0) {
    throw DomainError("upper_incomplete_gamma: divergent for a <= 0 at x = 0");
  }
  // The continued fraction converges for all a once x is moderately large,
  // and avoids the cancellation the downward recurrence suffers there.
  if (x > 1.5) return upper_gamma_cf(a, x);

  const double steps = std::floor(-a) + 1.0;  // smallest k with a + k > 0
  double base = a + steps;
  const bool integer_a = (a == std::floor(a));
  double value;
  int k = static_cast<int>(steps);
  if (integer_a) {
    // a + k lands on zero before turning positive; start from E1.
    base = 0.0;
    k = static_cast<int>(-a);
    value = exp_integral_e1(x);
  } else {
    value = upper_gamma_positive(base, x);
  }
  const double log_x = std::log(x);
  for (int i = 0; i < k; ++i) {
    const double lower = base - 1.0;
    value = (value - std::exp(lower * log_x - x)) / lower;
    base = lower;
  }
  return value;
}

IntegrationResult integrate_detailed(const RealFunction& f, double a, double b,
                                     const QuadratureSpec& spec, double scale) {
  spec.check();
  if (a == b) return {};
  if (std::isinf(b)) {
    if (b < 0) throw DomainError("integrate: lower-infinite ranges are not supported");
    if (!(scale > 0.0)) throw std::invalid_argument("integrate: scale must be positive");
    auto mapped = [&](double u) {
      if (u <= 0.0) return 0.0;
      const double t = a + scale * (1.0 - u) / u;
      const double y = f(t);
      if (y == 0.0) return 0.0;
      return y * scale / (u * u);
    };
    return adaptive(mapped, 0.0, 1.0, spec);
  }
  if (b < a) {
    IntegrationResult r = adaptive(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  return adaptive(f, a, b, spec);
}

double integrate_radial(const RealFunction& f, std::optional<double> r_max,
                        const QuadratureSpec& spec, double initial_radius) {
  auto weighted = [&](double rho) { return f(rho) * rho; };
  if (r_max) {
    return 2.0 * kPi * integrate(weighted, 0.0, *r_max, spec);
  }
  if (!(initial_radius > 0.0)) {
    throw std::invalid_argument("integrate_radial: initial_radius must be positive");
  }
  double sum = integrate(weighted, 0.0, initial_radius, spec);
  double lo = initial_radius;
  int quiet = 0;
  for (int doubling = 0; doubling < 200 && quiet < 3; ++doubling) {
    QuadratureSpec panel_spec = spec;
    panel_spec.abs_tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(sum));
    const double part = integrate(weighted, lo, 2.0 * lo, panel_spec);
    sum += part;
    lo *= 2.0;
    quiet = (std::abs(part) < spec.abs_tol) ? quiet + 1 : 0;
  }
  return 2.0 * kPi * sum;
}

double integrate_from_peak(const RealFunction& f, double a, double b, double scale,
                           const QuadratureSpec& spec) {
  double total = 0.0;
  double lo = a;
  double width = scale;
  while (lo < b) {
    const double hi = (a + width < b && width > 0.0) ? a + width : b;
    total += integrate(f, lo, hi, spec);
    lo = hi;
    width *= 8.0;
  }
  return total;
}

}  // namespace hfemto
