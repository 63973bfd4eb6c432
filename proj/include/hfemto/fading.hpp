#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "hfemto/specfun.hpp"

namespace hfemto {

/// Power-fading distribution of the interference links (g). The serving
/// link is always exponential with NetworkConfig::mu.
///
/// Rayleigh and Gamma (Nakagami-m power) have closed-form moments and can be
/// sampled. A custom model is described by its density and Laplace transform;
/// moments then come from quadrature against the density.
class FadingModel {
 public:
  enum class Kind { Rayleigh, Gamma, Custom };

  static FadingModel rayleigh(double mu);
  /// Gamma(shape, rate) power gain; shape = 1 is Rayleigh with mu = rate.
  static FadingModel gamma(double shape, double rate);
  /// `mean` sets the length scale used when integrating against `pdf`.
  static FadingModel custom(RealFunction pdf, RealFunction laplace, double mean = 1.0,
                            std::optional<RealFunction> fractional_moment = std::nullopt);

  Kind kind() const { return kind_; }
  std::string name() const;

  double pdf(double g) const;
  /// E[e^{-s g}].
  double laplace(double s) const;
  /// E[g^delta].
  double fractional_moment(double delta) const;
  /// E[g^delta * Gamma(-delta, c g)] for delta in (0, 1), c > 0, by
  /// quadrature against the density.
  double tail_moment(double delta, double c, const QuadratureSpec& spec = {}) const;
  /// E[f(g)] by quadrature against the density.
  double expect(const RealFunction& f, const QuadratureSpec& spec = {}) const;

  /// Rate parameter when the model is exponential (Rayleigh, or Gamma with
  /// shape 1).
  std::optional<double> exponential_rate() const;

  bool can_sample() const { return kind_ != Kind::Custom; }
  /// Throws MisuseError for custom models.
  double sample(std::mt19937_64& rng) const;

 private:
  Kind kind_ = Kind::Rayleigh;
  double shape_ = 1.0;
  double rate_ = 1.0;
  double mean_ = 1.0;
  std::shared_ptr<const RealFunction> pdf_;
  std::shared_ptr<const RealFunction> laplace_;
  std::shared_ptr<const RealFunction> moment_;
};

}  // namespace hfemto
