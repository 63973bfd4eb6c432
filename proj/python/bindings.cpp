#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "hfemto/analysis.hpp"
#include "hfemto/config_io.hpp"
#include "hfemto/curve.hpp"
#include "hfemto/errors.hpp"
#include "hfemto/load.hpp"
#include "hfemto/sim.hpp"
#include "json.hpp"

namespace py = pybind11;
using namespace hfemto;

namespace {

NetworkConfig load_config(const std::string& json_text, const std::vector<std::string>& sets,
                          std::optional<std::string> deployment) {
  return config_from_json(json_text.empty() ? "{}" : json_text, sets, std::move(deployment));
}

py::dict rates_dict(const RateReport& r) {
  py::dict d;
  d["tau_m"] = r.tau_m;
  d["tau_f"] = r.tau_f;
  d["tau_out"] = r.tau_out;
  d["tau_in"] = r.tau_in;
  d["tau_n"] = r.tau_n;
  d["tau_s"] = r.tau_s;
  d["config_hash"] = r.config_hash;
  return d;
}

py::dict diagnostics_dict(const SimDiagnostics& s) {
  py::dict d;
  d["snapshots"] = s.snapshots;
  d["resamples"] = s.resamples;
  d["mean_mbs"] = s.mean_mbs;
  d["mean_faps"] = s.mean_faps;
  d["mean_us"] = s.mean_us;
  d["mean_uin"] = s.mean_uin;
  d["mean_uout"] = s.mean_uout;
  d["expected_us"] = s.expected_us;
  d["expected_uin"] = s.expected_uin;
  d["expected_uout"] = s.expected_uout;
  d["busy_f"] = s.busy_f;
  d["busy_f_analytic"] = s.busy_f_analytic;
  d["busy_f_z"] = s.busy_f_z;
  d["busy_m"] = s.busy_m;
  d["busy_m_analytic"] = s.busy_m_analytic;
  d["busy_m_z"] = s.busy_m_z;
  d["runtime_s"] = s.runtime_s;
  d["warnings"] = s.warnings;
  return d;
}

std::vector<double> grid_or_default(std::optional<std::vector<double>> thresholds) {
  return thresholds ? *thresholds : log_grid();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-tier macro/femto SINR analysis and simulation";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);

  m.def(
      "canonical_config",
      [](const std::string& json_text, const std::vector<std::string>& sets,
         std::optional<std::string> deployment) {
        return config_to_json(load_config(json_text, sets, std::move(deployment)));
      },
      py::arg("json_text") = "", py::arg("sets") = std::vector<std::string>{},
      py::arg("deployment") = py::none());

  m.def("config_keys", &config_keys);

  m.def(
      "log_grid", [](double a, double b, int n) { return log_grid(a, b, n); },
      py::arg("t_min") = 1e-2, py::arg("t_max") = 1e2, py::arg("points") = 60);

  m.def(
      "analyze",
      [](const std::string& json_text, const std::vector<std::string>& sets,
         std::optional<std::string> deployment, std::optional<std::vector<double>> thresholds) {
        const auto cfg = load_config(json_text, sets, std::move(deployment));
        Analysis a;
        {
          py::gil_scoped_release release;
          a = analyze(cfg, grid_or_default(std::move(thresholds)));
        }
        py::dict d;
        d["T"] = a.curves.thresholds;
        d["Z_m"] = a.curves.z_m;
        d["Z_f"] = a.curves.z_f;
        d["rates"] = rates_dict(a.rates);
        return d;
      },
      py::arg("json_text") = "", py::arg("sets") = std::vector<std::string>{},
      py::arg("deployment") = py::none(), py::arg("thresholds") = py::none());

  m.def(
      "simulate",
      [](const std::string& json_text, const std::vector<std::string>& sets,
         std::optional<std::string> deployment, int snapshots, std::uint64_t seed,
         double window_half_width, const std::string& boundary, double guard_margin, int workers,
         std::optional<std::vector<double>> thresholds) {
        const auto cfg = load_config(json_text, sets, std::move(deployment));
        SimSpec spec;
        spec.snapshots = snapshots;
        spec.seed = seed;
        spec.window_half_width = window_half_width;
        if (boundary == "torus") {
          spec.boundary = Boundary::Torus;
        } else if (boundary == "guard") {
          spec.boundary = Boundary::Guard;
        } else {
          throw std::invalid_argument("boundary must be torus or guard");
        }
        spec.guard_margin = guard_margin;
        spec.workers = workers;
        spec.thresholds = grid_or_default(std::move(thresholds));
        SimResult r;
        {
          py::gil_scoped_release release;
          r = run(cfg, spec);
        }
        py::dict d;
        d["T"] = r.macro.thresholds;
        d["Z_m"] = r.macro.cdf;
        d["Z_f"] = r.femto.cdf;
        d["rates"] = rates_dict(r.rates);
        d["diagnostics"] = diagnostics_dict(r.diagnostics);
        return d;
      },
      py::arg("json_text") = "", py::arg("sets") = std::vector<std::string>{},
      py::arg("deployment") = py::none(), py::arg("snapshots") = 1000, py::arg("seed") = 1,
      py::arg("window_half_width") = 2000.0, py::arg("boundary") = "torus",
      py::arg("guard_margin") = 500.0, py::arg("workers") = 1,
      py::arg("thresholds") = py::none());

  m.def(
      "sweep",
      [](const std::string& json_text, const std::vector<std::string>& sets,
         std::optional<std::string> deployment, const std::string& variable,
         const std::vector<double>& values) {
        const auto cfg = load_config(json_text, sets, std::move(deployment));
        SweepSpec spec;
        spec.variable = parse_sweep_variable(variable);
        spec.values = values;
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = sweep_analytic(cfg, spec);
        }
        py::list out;
        for (const auto& row : rows) {
          auto d = rates_dict(row.rates);
          d["var"] = row.var;
          out.append(d);
        }
        return out;
      },
      py::arg("json_text") = "", py::arg("sets") = std::vector<std::string>{},
      py::arg("deployment") = py::none(), py::arg("variable") = "Ms",
      py::arg("values") = std::vector<double>{});

  m.def(
      "compare",
      [](const std::vector<double>& thresholds, const std::vector<double>& a,
         const std::vector<double>& b) {
        const SinrCurve ca{thresholds, a};
        const SinrCurve cb{thresholds, b};
        py::dict d;
        d["sup"] = sup_distance(ca, cb);
        d["l1"] = l1_distance(ca, cb);
        return d;
      },
      py::arg("thresholds"), py::arg("a"), py::arg("b"));

  m.def("p_busy_f", [](const std::string& json_text) { return p_busy_f(load_config(json_text, {}, std::nullopt)); },
        py::arg("json_text") = "");
  m.def("p_busy_m", [](const std::string& json_text) { return p_busy_m(load_config(json_text, {}, std::nullopt)); },
        py::arg("json_text") = "");
}
