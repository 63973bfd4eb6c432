#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hfemto {

enum class CurveLabel { MacroPPP, FemtoPPP, MacroCluster, FemtoCluster, EmpiricalMacro, EmpiricalFemto };

std::string to_string(CurveLabel label);

/// SINR CDF sampled on an ascending grid of linear thresholds.
struct SinrCurve {
  std::vector<double> thresholds;
  std::vector<double> cdf;
  CurveLabel label = CurveLabel::MacroPPP;

  std::size_t size() const { return thresholds.size(); }
};

/// `points` log-spaced thresholds over [t_min, t_max]; a single point gives
/// {t_min}. Defaults span -20 dB .. +20 dB with 60 points.
std::vector<double> log_grid(double t_min = 1e-2, double t_max = 1e2, int points = 60);

/// Evaluates `cdf` at each threshold. Values within `tol` outside [0, 1] are
/// clamped; anything further out throws AccuracyError.
SinrCurve make_curve(CurveLabel label, const std::vector<double>& thresholds,
                     const std::function<double(double)>& cdf, double tol = 1e-6);

/// Checks ascending thresholds, matching lengths, cdf within [0, 1] and
/// nondecreasing up to `tol`. Returns the problems found.
std::vector<std::string> check_curve(const SinrCurve& curve, double tol = 1e-9);

/// max_i |a_i - b_i|; throws std::invalid_argument on grid mismatch.
double sup_distance(const SinrCurve& a, const SinrCurve& b);
/// Trapezoidal L1 distance over log T.
double l1_distance(const SinrCurve& a, const SinrCurve& b);

}  // namespace hfemto
