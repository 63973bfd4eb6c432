#include "hfemto/fading.hpp"

#include <cmath>
#include <stdexcept>

#include "hfemto/errors.hpp"

namespace hfemto {

FadingModel FadingModel::rayleigh(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("Rayleigh fading needs mu > 0");
  FadingModel m;
  m.kind_ = Kind::Rayleigh;
  m.shape_ = 1.0;
  m.rate_ = mu;
  m.mean_ = 1.0 / mu;
  return m;
}

FadingModel FadingModel::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::invalid_argument("Gamma fading needs positive shape and rate");
  }
  FadingModel m;
  m.kind_ = Kind::Gamma;
  m.shape_ = shape;
  m.rate_ = rate;
  m.mean_ = shape / rate;
  return m;
}

FadingModel FadingModel::custom(RealFunction pdf, RealFunction laplace, double mean,
                                std::optional<RealFunction> fractional_moment) {
  if (!pdf || !laplace) throw std::invalid_argument("custom fading needs pdf and laplace");
  if (!(mean > 0.0)) throw std::invalid_argument("custom fading needs a positive mean scale");
  FadingModel m;
  m.kind_ = Kind::Custom;
  m.mean_ = mean;
  m.pdf_ = std::make_shared<const RealFunction>(std::move(pdf));
  m.laplace_ = std::make_shared<const RealFunction>(std::move(laplace));
  if (fractional_moment && *fractional_moment) {
    m.moment_ = std::make_shared<const RealFunction>(std::move(*fractional_moment));
  }
  return m;
}

std::string FadingModel::name() const {
  switch (kind_) {
    case Kind::Rayleigh: return "rayleigh";
    case Kind::Gamma: return "gamma";
    case Kind::Custom: return "custom";
  }
  return "unknown";
}

double FadingModel::pdf(double g) const {
  if (kind_ == Kind::Custom) return (*pdf_)(g);
  if (g < 0.0) return 0.0;
  if (g == 0.0) {
    if (shape_ < 1.0) return kInf;
    return shape_ == 1.0 ? rate_ : 0.0;
  }
  return std::exp(shape_ * std::log(rate_) + (shape_ - 1.0) * std::log(g) - rate_ * g -
                  std::lgamma(shape_));
}

double FadingModel::laplace(double s) const {
  if (kind_ == Kind::Custom) return (*laplace_)(s);
  return std::pow(rate_ / (rate_ + s), shape_);
}

double FadingModel::fractional_moment(double delta) const {
  if (delta == 0.0) return 1.0;
  switch (kind_) {
    case Kind::Rayleigh:
    case Kind::Gamma:
      return std::exp(std::lgamma(shape_ + delta) - std::lgamma(shape_) -
                      delta * std::log(rate_));
    case Kind::Custom:
      if (moment_) return (*moment_)(delta);
      return expect([delta](double g) { return std::pow(g, delta); });
  }
  return 0.0;
}

double FadingModel::expect(const RealFunction& f, const QuadratureSpec& spec) const {
  auto integrand = [&](double g) {
    const double p = pdf(g);
    return p == 0.0 ? 0.0 : f(g) * p;
  };
  // Split at the mean: the density may be singular at 0 and heavy-tailed.
  return integrate(integrand, 0.0, mean_, spec) + integrate(integrand, mean_, kInf, spec, mean_);
}

double FadingModel::tail_moment(double delta, double c, const QuadratureSpec& spec) const {
  if (!(c > 0.0)) throw DomainError("tail_moment: c must be positive");
  return expect(
      [delta, c](double g) {
        if (g <= 0.0) {
          // g^d Gamma(-d, c g) -> c^-d / d as g -> 0.
          return std::pow(c, -delta) / delta;
        }
        return std::pow(g, delta) * upper_incomplete_gamma(-delta, c * g);
      },
      spec);
}

std::optional<double> FadingModel::exponential_rate() const {
  if (kind_ == Kind::Rayleigh || (kind_ == Kind::Gamma && shape_ == 1.0)) return rate_;
  return std::nullopt;
}

double FadingModel::sample(std::mt19937_64& rng) const {
  switch (kind_) {
    case Kind::Rayleigh: return std::exponential_distribution<double>(rate_)(rng);
    case Kind::Gamma: return std::gamma_distribution<double>(shape_, 1.0 / rate_)(rng);
    case Kind::Custom: break;
  }
  throw MisuseError("custom fading models cannot be sampled");
}

}  // namespace hfemto
