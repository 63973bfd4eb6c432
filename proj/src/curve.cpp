#include "hfemto/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hfemto/errors.hpp"

namespace hfemto {

std::string to_string(CurveLabel label) {
  switch (label) {
    case CurveLabel::MacroPPP: return "macro_ppp";
    case CurveLabel::FemtoPPP: return "femto_ppp";
    case CurveLabel::MacroCluster: return "macro_cluster";
    case CurveLabel::FemtoCluster: return "femto_cluster";
    case CurveLabel::EmpiricalMacro: return "empirical_macro";
    case CurveLabel::EmpiricalFemto: return "empirical_femto";
  }
  return "unknown";
}

std::vector<double> log_grid(double t_min, double t_max, int points) {
  if (points < 1) throw std::invalid_argument("log_grid: need at least one point");
  if (!(t_min > 0.0) || !(t_max >= t_min)) {
    throw std::invalid_argument("log_grid: need 0 < t_min <= t_max");
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = t_min;
    return out;
  }
  const double lo = std::log10(t_min);
  const double step = (std::log10(t_max) - lo) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = std::pow(10.0, lo + step * i);
  out.back() = t_max;
  return out;
}

SinrCurve make_curve(CurveLabel label, const std::vector<double>& thresholds,
                     const std::function<double(double)>& cdf, double tol) {
  SinrCurve c;
  c.label = label;
  c.thresholds = thresholds;
  c.cdf.reserve(thresholds.size());
  for (double t : thresholds) {
    double z = cdf(t);
    if (z < -tol || z > 1.0 + tol || !std::isfinite(z)) {
      throw AccuracyError("CDF value outside [0, 1] at T = " + std::to_string(t), z, 0.0);
    }
    c.cdf.push_back(std::clamp(z, 0.0, 1.0));
  }
  return c;
}

std::vector<std::string> check_curve(const SinrCurve& curve, double tol) {
  std::vector<std::string> out;
  if (curve.thresholds.size() != curve.cdf.size()) {
    out.emplace_back("thresholds and cdf differ in length");
    return out;
  }
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve.cdf[i] < -tol || curve.cdf[i] > 1.0 + tol) {
      std::ostringstream m;
      m << "cdf[" << i << "] = " << curve.cdf[i] << " outside [0, 1]";
      out.push_back(m.str());
    }
    if (i > 0) {
      if (!(curve.thresholds[i] > curve.thresholds[i - 1])) {
        out.emplace_back("thresholds not strictly ascending at index " + std::to_string(i));
      }
      if (curve.cdf[i] < curve.cdf[i - 1] - tol) {
        out.emplace_back("cdf decreases at index " + std::to_string(i));
      }
    }
  }
  return out;
}

namespace {

void require_same_grid(const SinrCurve& a, const SinrCurve& b) {
  if (a.size() != b.size()) throw std::invalid_argument("curves have different grid sizes");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a.thresholds[i];
    const double y = b.thresholds[i];
    if (std::abs(x - y) > 1e-9 * std::max(std::abs(x), std::abs(y))) {
      throw std::invalid_argument("curves have different thresholds at index " +
                                  std::to_string(i));
    }
  }
}

}  // namespace

double sup_distance(const SinrCurve& a, const SinrCurve& b) {
  require_same_grid(a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.cdf[i] - b.cdf[i]));
  return d;
}

double l1_distance(const SinrCurve& a, const SinrCurve& b) {
  require_same_grid(a, b);
  if (a.size() < 2) return a.size() == 1 ? std::abs(a.cdf[0] - b.cdf[0]) : 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double h = std::log(a.thresholds[i]) - std::log(a.thresholds[i - 1]);
    sum += 0.5 * h * (std::abs(a.cdf[i] - b.cdf[i]) + std::abs(a.cdf[i - 1] - b.cdf[i - 1]));
  }
  return sum;
}

}  // namespace hfemto
