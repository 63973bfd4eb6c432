#pragma once

#include <string>
#include <vector>

#include "hfemto/config.hpp"
#include "hfemto/io.hpp"
#include "hfemto/rates.hpp"
#include "hfemto/sim.hpp"

namespace hfemto {

/// Analytic curves and rates for one configuration, with the PPP or
/// cluster expressions chosen from cfg.deployment.
struct Analysis {
  CurvePair curves;
  RateReport rates;
};

Analysis analyze(const NetworkConfig& cfg, const std::vector<double>& thresholds = log_grid());

/// Analytic tau_m and tau_f wrapped into a full rate report.
RateReport analytic_rates(const NetworkConfig& cfg);

enum class SweepVariable { Ms, LambdaOut };
enum class SweepEngine { Analytic, Simulate, Both };

struct SweepSpec {
  SweepVariable variable = SweepVariable::Ms;
  std::vector<double> values;
  SweepEngine engine = SweepEngine::Analytic;

  /// Empty values, unsorted values, M_s outside 0..M or non-integer,
  /// negative lambda_out.
  std::vector<std::string> validate(const NetworkConfig& cfg) const;
};

SweepVariable parse_sweep_variable(const std::string& name);
SweepEngine parse_sweep_engine(const std::string& name);

/// cfg with the sweep variable set to `value`.
NetworkConfig apply_sweep_value(const NetworkConfig& cfg, SweepVariable var, double value);

std::vector<SweepRow> sweep_analytic(const NetworkConfig& cfg, const SweepSpec& spec);
std::vector<SweepRow> sweep_simulated(const NetworkConfig& cfg, const SweepSpec& spec,
                                      const SimSpec& sim);

/// Parses "a,b,c", "a:b" (inclusive integer range) or "log:a:b:n".
std::vector<double> parse_values(const std::string& text);

}  // namespace hfemto
