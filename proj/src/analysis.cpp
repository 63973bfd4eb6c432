#include "hfemto/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hfemto/analytic_cluster.hpp"
#include "hfemto/analytic_ppp.hpp"

namespace hfemto {

Analysis analyze(const NetworkConfig& cfg, const std::vector<double>& thresholds) {
  const auto ctx = make_context(cfg);
  Analysis a;
  a.curves.thresholds = thresholds;
  double tm = 0.0;
  double tf = 0.0;
  if (cfg.clustered()) {
    ClusterKernelCache cache(ctx);
    a.curves.z_m = macro_curve_cluster(ctx, cache, thresholds).cdf;
    a.curves.z_f = femto_curve_cluster(ctx, cache, thresholds).cdf;
    tm = tau_m_cluster(ctx, cache);
    tf = tau_f_cluster(ctx, cache);
  } else {
    a.curves.z_m = macro_curve_ppp(ctx, thresholds).cdf;
    a.curves.z_f = femto_curve_ppp(ctx, thresholds).cdf;
    tm = tau_m_ppp(ctx);
    tf = tau_f_ppp(ctx);
  }
  a.rates = make_rate_report(tm, tf, cfg);
  return a;
}

RateReport analytic_rates(const NetworkConfig& cfg) {
  const auto ctx = make_context(cfg);
  if (cfg.clustered()) {
    ClusterKernelCache cache(ctx);
    return make_rate_report(tau_m_cluster(ctx, cache), tau_f_cluster(ctx, cache), cfg);
  }
  return make_rate_report(tau_m_ppp(ctx), tau_f_ppp(ctx), cfg);
}

std::vector<std::string> SweepSpec::validate(const NetworkConfig& cfg) const {
  std::vector<std::string> out;
  if (values.empty()) out.emplace_back("sweep values are empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      out.emplace_back("sweep values must be strictly ascending");
      break;
    }
  }
  for (double v : values) {
    if (variable == SweepVariable::Ms) {
      if (v != std::floor(v) || v < 0.0 || v > cfg.M) {
        out.push_back("M_s value " + std::to_string(v) + " is not an integer in 0.." +
                      std::to_string(cfg.M));
      }
    } else if (!(v >= 0.0) || !std::isfinite(v)) {
      out.push_back("lambda_out value " + std::to_string(v) + " must be >= 0");
    }
  }
  return out;
}

SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "Ms" || name == "M_s") return SweepVariable::Ms;
  if (name == "lambda_out" || name == "LambdaOut") return SweepVariable::LambdaOut;
  throw std::invalid_argument("sweep variable must be 'Ms' or 'lambda_out', got '" + name + "'");
}

SweepEngine parse_sweep_engine(const std::string& name) {
  if (name == "analytic") return SweepEngine::Analytic;
  if (name == "simulate") return SweepEngine::Simulate;
  if (name == "both") return SweepEngine::Both;
  throw std::invalid_argument("engine must be analytic, simulate or both, got '" + name + "'");
}

NetworkConfig apply_sweep_value(const NetworkConfig& cfg, SweepVariable var, double value) {
  NetworkConfig out = cfg;
  if (var == SweepVariable::Ms) {
    out.M_s = static_cast<int>(value);
  } else {
    out.lambda_out = value;
  }
  return out;
}

namespace {

void require_valid_sweep(const NetworkConfig& cfg, const SweepSpec& spec) {
  const auto problems = spec.validate(cfg);
  if (problems.empty()) return;
  std::string msg = "invalid sweep:";
  for (const auto& p : problems) msg += "\n  - " + p;
  throw std::invalid_argument(msg);
}

}  // namespace

std::vector<SweepRow> sweep_analytic(const NetworkConfig& cfg, const SweepSpec& spec) {
  require_valid_sweep(cfg, spec);
  std::vector<SweepRow> rows;
  for (double v : spec.values) {
    rows.push_back({v, analytic_rates(apply_sweep_value(cfg, spec.variable, v))});
  }
  return rows;
}

std::vector<SweepRow> sweep_simulated(const NetworkConfig& cfg, const SweepSpec& spec,
                                      const SimSpec& sim) {
  require_valid_sweep(cfg, spec);
  std::vector<SweepRow> rows;
  for (double v : spec.values) {
    rows.push_back({v, run(apply_sweep_value(cfg, spec.variable, v), sim).rates});
  }
  return rows;
}

std::vector<double> parse_values(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      throw std::invalid_argument("'" + s + "' is not a number in values '" + text + "'");
    }
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  std::vector<double> out;
  if (text.rfind("log:", 0) == 0) {
    std::stringstream ls(text.substr(4));
    while (std::getline(ls, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw std::invalid_argument("expected log:a:b:n, got '" + text + "'");
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    const double n = number(parts[2]);
    if (!(a > 0.0) || !(b > a) || n < 2 || n != std::floor(n)) {
      throw std::invalid_argument("log:a:b:n needs 0 < a < b and integer n >= 2");
    }
    for (int i = 0; i < static_cast<int>(n); ++i) {
      out.push_back(a * std::pow(b / a, i / (n - 1.0)));
    }
    out.back() = b;
    return out;
  }
  if (text.find(':') != std::string::npos) {
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 2) throw std::invalid_argument("expected a:b, got '" + text + "'");
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    if (a != std::floor(a) || b != std::floor(b) || b < a) {
      throw std::invalid_argument("a:b needs integers a <= b");
    }
    for (double v = a; v <= b; v += 1.0) out.push_back(v);
    return out;
  }
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(number(item));
  }
  return out;
}

}  // namespace hfemto
