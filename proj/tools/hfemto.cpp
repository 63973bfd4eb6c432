// hfemto: analytic and simulated SINR curves and rates for two-tier
// macro/femto networks with hybrid access.

#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hfemto/analysis.hpp"
#include "hfemto/config_io.hpp"
#include "hfemto/errors.hpp"
#include "hfemto/io.hpp"
#include "hfemto/sim.hpp"

namespace {

using namespace hfemto;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kNumericFailure = 3;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> sets;
  std::string deployment;
  std::string out;
  double t_min = 1e-2;
  double t_max = 1e2;
  int t_points = 60;
  bool bits = false;

  double unit() const { return bits ? 1.0 / std::log(2.0) : 1.0; }

  NetworkConfig config() const {
    std::optional<std::string> dep;
    if (!deployment.empty()) dep = deployment;
    if (config_path.empty()) return config_from_json("{}", sets, dep);
    return config_from_file(config_path, sets, dep);
  }

  std::vector<double> grid() const {
    if (t_points < 1) throw InputError("--t-points must be >= 1");
    if (!(t_min > 0.0) || (t_points > 1 && !(t_max > t_min))) {
      throw InputError("threshold grid needs 0 < t-min < t-max");
    }
    return log_grid(t_min, t_max, t_points);
  }
};

struct SimOptions {
  int snapshots = 1000;
  std::uint64_t seed = 1;
  double window_half_width = 2000.0;
  std::string boundary = "torus";
  double guard_margin = 500.0;
  int workers = 1;
  bool full_geometry = false;

  SimSpec spec(const std::vector<double>& grid) const {
    SimSpec s;
    s.snapshots = snapshots;
    s.seed = seed;
    s.window_half_width = window_half_width;
    s.guard_margin = guard_margin;
    s.workers = workers;
    s.full_geometry = full_geometry;
    s.thresholds = grid;
    if (boundary == "torus") {
      s.boundary = Boundary::Torus;
    } else if (boundary == "guard") {
      s.boundary = Boundary::Guard;
    } else {
      throw InputError("--boundary must be torus or guard");
    }
    const auto problems = s.validate();
    if (!problems.empty()) {
      std::string msg = "invalid simulation settings:";
      for (const auto& p : problems) msg += "\n  - " + p;
      throw InputError(msg);
    }
    return s;
  }
};

void add_common(CLI::App* cmd, CommonOptions& o, const std::string& default_out) {
  o.out = default_out;
  cmd->add_option("--config", o.config_path, "Flat JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--set", o.sets, "Override one key, key=value (repeatable)");
  cmd->add_option("--deployment", o.deployment, "FAP deployment")
      ->check(CLI::IsMember({"ppp", "cluster"}));
  cmd->add_option("--out", o.out, "Output CSV path")->capture_default_str();
  cmd->add_option("--t-min", o.t_min, "Smallest SINR threshold (linear)")->capture_default_str();
  cmd->add_option("--t-max", o.t_max, "Largest SINR threshold (linear)")->capture_default_str();
  cmd->add_option("--t-points", o.t_points, "Number of log-spaced thresholds")->capture_default_str();
  cmd->add_flag("--bits", o.bits, "Report rates in bits/s/Hz instead of nats/s/Hz");
}

void add_sim(CLI::App* cmd, SimOptions& o) {
  cmd->add_option("--snapshots", o.snapshots, "Number of independent snapshots")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Base RNG seed")->capture_default_str();
  cmd->add_option("--window-half-width", o.window_half_width, "Half width L of the [-L, L]^2 window (m)")->capture_default_str();
  cmd->add_option("--boundary", o.boundary, "Edge handling")->capture_default_str()
      ->check(CLI::IsMember({"torus", "guard"}));
  cmd->add_option("--guard-margin", o.guard_margin, "Guard band width for --boundary guard (m)")->capture_default_str();
  cmd->add_option("--workers", o.workers, "Worker threads")->capture_default_str();
  cmd->add_flag("--full-geometry", o.full_geometry,
                "Measure femto-UE interference from the UE position instead of its FAP");
}

void print_rates(const RateReport& r, double unit) {
  const char* u = unit == 1.0 ? "nats/s/Hz" : "bits/s/Hz";
  std::printf("tau_m   %.6f %s\ntau_f   %.6f\ntau_out %.6f\ntau_in  %.6f\ntau_n   %.6f\ntau_s   %.6f\n",
              r.tau_m * unit, u, r.tau_f * unit, r.tau_out * unit, r.tau_in * unit, r.tau_n * unit,
              r.tau_s * unit);
}

int cmd_analyze(const CommonOptions& o) {
  const auto cfg = o.config();
  const auto result = analyze(cfg, o.grid());
  write_file_atomic(o.out, curves_csv(result.curves));
  const auto json_path = replace_extension(o.out, ".json");
  write_file_atomic(json_path, rate_report_json(result.rates, o.unit()));
  std::printf("deployment %s, %zu thresholds\n", cfg.clustered() ? "cluster" : "ppp",
              result.curves.thresholds.size());
  print_rates(result.rates, o.unit());
  std::printf("wrote %s and %s\n", o.out.c_str(), json_path.c_str());
  return kOk;
}

int cmd_simulate(const CommonOptions& o, const SimOptions& s) {
  const auto cfg = o.config();
  const auto spec = s.spec(o.grid());
  const auto result = run(cfg, spec);
  CurvePair curves{spec.thresholds, result.macro.cdf, result.femto.cdf};
  write_file_atomic(o.out, curves_csv(curves));
  const auto json_path = replace_extension(o.out, ".json");
  write_file_atomic(json_path, diagnostics_json(result.diagnostics, spec, result.rates, o.unit()));
  for (const auto& w : result.diagnostics.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  const auto& d = result.diagnostics;
  std::printf("%d snapshots in %.2f s, %d resamples\n", d.snapshots, d.runtime_s, d.resamples);
  std::printf("busy fap %.5f (analytic %.5f, z %.2f)  busy mbs %.5f (analytic %.5f, z %.2f)\n", d.busy_f,
              d.busy_f_analytic, d.busy_f_z, d.busy_m, d.busy_m_analytic, d.busy_m_z);
  print_rates(result.rates, o.unit());
  std::printf("wrote %s and %s\n", o.out.c_str(), json_path.c_str());
  return kOk;
}

struct CompareOptions {
  std::string first;
  std::string second;
  double threshold = 0.02;
  std::string out;
};

int cmd_compare(const CompareOptions& o) {
  const auto a = read_curves_csv(o.first);
  const auto b = read_curves_csv(o.second);
  if (a.thresholds.size() != b.thresholds.size()) {
    throw InputError("threshold grids differ in length (" + std::to_string(a.thresholds.size()) + " vs " +
                     std::to_string(b.thresholds.size()) + ")");
  }
  for (std::size_t i = 0; i < a.thresholds.size(); ++i) {
    const double x = a.thresholds[i];
    const double y = b.thresholds[i];
    if (std::abs(x - y) > 1e-9 * std::max(std::abs(x), std::abs(y))) {
      throw InputError("threshold grids differ at row " + std::to_string(i + 1));
    }
  }
  auto curve = [](const CurvePair& c, const std::vector<double>& z) {
    SinrCurve s;
    s.thresholds = c.thresholds;
    s.cdf = z;
    return s;
  };
  const double sup_m = sup_distance(curve(a, a.z_m), curve(b, b.z_m));
  const double sup_f = sup_distance(curve(a, a.z_f), curve(b, b.z_f));
  const double l1_m = l1_distance(curve(a, a.z_m), curve(b, b.z_m));
  const double l1_f = l1_distance(curve(a, a.z_f), curve(b, b.z_f));
  const bool pass = sup_m <= o.threshold && sup_f <= o.threshold;
  std::printf("curve  sup        l1\n");
  std::printf("Z_m    %.6f   %.6f\n", sup_m, l1_m);
  std::printf("Z_f    %.6f   %.6f\n", sup_f, l1_f);
  std::printf("%s at threshold %g\n", pass ? "PASS" : "FAIL", o.threshold);
  if (!o.out.empty()) {
    nlohmann::json j{{"sup_m", sup_m}, {"sup_f", sup_f},           {"l1_m", l1_m},
                     {"l1_f", l1_f},   {"threshold", o.threshold}, {"pass", pass}};
    write_file_atomic(o.out, j.dump(2) + "\n");
  }
  return pass ? kOk : kNumericFailure;
}

struct SweepOptions {
  std::string variable = "Ms";
  std::string values;
  std::string engine = "analytic";
};

int cmd_sweep(const CommonOptions& o, const SimOptions& s, const SweepOptions& w) {
  const auto cfg = o.config();
  SweepSpec spec;
  spec.variable = parse_sweep_variable(w.variable);
  spec.engine = parse_sweep_engine(w.engine);
  spec.values = parse_values(w.values);
  const auto problems = spec.validate(cfg);
  if (!problems.empty()) {
    std::string msg = "invalid sweep:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw InputError(msg);
  }
  auto report = [&](const std::vector<SweepRow>& rows, const std::string& path) {
    write_file_atomic(path, sweep_csv(rows, o.unit()));
    std::printf("%-12s %-10s %-10s %-10s %-10s\n", "var", "tau_n", "tau_s", "tau_m", "tau_f");
    for (const auto& r : rows) {
      std::printf("%-12g %-10.5f %-10.5f %-10.5f %-10.5f\n", r.var, r.rates.tau_n * o.unit(),
                  r.rates.tau_s * o.unit(), r.rates.tau_m * o.unit(), r.rates.tau_f * o.unit());
    }
    std::printf("wrote %s\n", path.c_str());
  };
  if (spec.engine != SweepEngine::Simulate) report(sweep_analytic(cfg, spec), o.out);
  if (spec.engine != SweepEngine::Analytic) {
    const auto sim = s.spec(o.grid());
    const auto path = spec.engine == SweepEngine::Both ? add_suffix(o.out, "_sim") : o.out;
    report(sweep_simulated(cfg, spec, sim), path);
  }
  return kOk;
}

void print_config_error(const ConfigError& e) {
  std::fprintf(stderr, "error: invalid configuration\n");
  for (const auto& p : e.problems()) std::fprintf(stderr, "  - %s\n", p.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytic and simulated SINR distributions and rates for hybrid-access femtocell networks"};
  app.require_subcommand(1);

  CommonOptions analyze_opts;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analytic SINR CDFs (CSV) and rate report (JSON)");
  add_common(analyze_cmd, analyze_opts, "analytic.csv");

  CommonOptions sim_common;
  SimOptions sim_opts;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo SINR CDFs (CSV) and diagnostics (JSON)");
  add_common(simulate_cmd, sim_common, "simulated.csv");
  add_sim(simulate_cmd, sim_opts);

  CompareOptions compare_opts;
  auto* compare_cmd = app.add_subcommand("compare", "Sup-norm and L1 distances between two curve files");
  compare_cmd->add_option("first", compare_opts.first, "First T,Z_m,Z_f file")->required();
  compare_cmd->add_option("second", compare_opts.second, "Second T,Z_m,Z_f file")->required();
  compare_cmd->add_option("--threshold", compare_opts.threshold, "Largest accepted sup-norm distance")->capture_default_str();
  compare_cmd->add_option("--out", compare_opts.out, "Optional JSON report path");

  CommonOptions sweep_common;
  SimOptions sweep_sim;
  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Class rates over M_s or lambda_out (CSV)");
  add_common(sweep_cmd, sweep_common, "sweep.csv");
  add_sim(sweep_cmd, sweep_sim);
  sweep_cmd->add_option("--var", sweep_opts.variable, "Ms or lambda_out")->capture_default_str();
  sweep_cmd->add_option("--values", sweep_opts.values, "a,b,c | a:b (integers) | log:a:b:n")->required();
  sweep_cmd->add_option("--engine", sweep_opts.engine, "analytic, simulate or both")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(analyze_opts);
    if (*simulate_cmd) return cmd_simulate(sim_common, sim_opts);
    if (*compare_cmd) return cmd_compare(compare_opts);
    if (*sweep_cmd) return cmd_sweep(sweep_common, sweep_sim, sweep_opts);
  } catch (const ConfigError& e) {
    print_config_error(e);
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInputError;
  } catch (const AccuracyError& e) {
    std::fprintf(stderr, "numeric failure: %s (estimate %g, error bound %g)\n", e.what(), e.estimate(),
                 e.error_bound());
    return kNumericFailure;
  } catch (const std::bad_alloc&) {
    std::fprintf(stderr, "numeric failure: out of memory\n");
    return kNumericFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kNumericFailure;
  }
  return kInputError;
}
