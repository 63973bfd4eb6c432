#pragma once

#include <stdexcept>
#include <string>

namespace hfemto {

/// Argument outside the mathematical domain of an operation (poles,
/// divergent integrals, undefined ratios).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An evaluator was called outside the parameter regime it is defined for,
/// e.g. a closed form that only holds for alpha = 4 and zero noise.
class MisuseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Numerical procedure failed to reach the requested tolerance. Carries the
/// best available estimate and its error bound.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace hfemto
