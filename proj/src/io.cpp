#include "hfemto/io.hpp"

#include <cerrno>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"

namespace hfemto {

using nlohmann::json;
namespace fs = std::filesystem;

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(static_cast<unsigned long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw InputError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move output into place at '" + path + "'");
  }
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string curves_csv(const CurvePair& c) {
  std::string out = "T,Z_m,Z_f\n";
  for (std::size_t i = 0; i < c.thresholds.size(); ++i) {
    out += format_number(c.thresholds[i]) + "," + format_number(c.z_m[i]) + "," +
           format_number(c.z_f[i]) + "\n";
  }
  return out;
}

namespace {

double parse_double(const std::string& field, std::size_t line) {
  const char* first = field.data();
  const char* last = first + field.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
  double v = 0.0;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw InputError("line " + std::to_string(line) + ": '" + field + "' is not a number");
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CurvePair parse_curves_csv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty curve file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "T,Z_m,Z_f") throw InputError("expected header 'T,Z_m,Z_f', got '" + line + "'");
  CurvePair c;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw InputError("line " + std::to_string(n) + ": expected 3 fields");
    }
    c.thresholds.push_back(parse_double(fields[0], n));
    c.z_m.push_back(parse_double(fields[1], n));
    c.z_f.push_back(parse_double(fields[2], n));
  }
  if (c.thresholds.empty()) throw InputError("curve file has no data rows");
  return c;
}

CurvePair read_curves_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_curves_csv(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string sweep_csv(const std::vector<SweepRow>& rows, double unit) {
  std::string out = "var,tau_n,tau_s,tau_m,tau_f\n";
  for (const auto& r : rows) {
    out += format_number(r.var) + "," + format_number(r.rates.tau_n * unit) + "," +
           format_number(r.rates.tau_s * unit) + "," + format_number(r.rates.tau_m * unit) + "," +
           format_number(r.rates.tau_f * unit) + "\n";
  }
  return out;
}

namespace {

json report_object(const RateReport& r, double unit) {
  return json{{"tau_m", r.tau_m * unit},   {"tau_f", r.tau_f * unit},
              {"tau_out", r.tau_out * unit}, {"tau_in", r.tau_in * unit},
              {"tau_n", r.tau_n * unit},   {"tau_s", r.tau_s * unit},
              {"unit", unit == 1.0 ? "nats/s/Hz" : "bits/s/Hz"},
              {"config_hash", r.config_hash}};
}

}  // namespace

std::string rate_report_json(const RateReport& r, double unit, int indent) {
  return report_object(r, unit).dump(indent) + "\n";
}

std::string diagnostics_json(const SimDiagnostics& d, const SimSpec& spec, const RateReport& r,
                             double unit, int indent) {
  json j;
  j["rates"] = report_object(r, unit);
  j["spec"] = {{"window_half_width", spec.window_half_width},
               {"snapshots", spec.snapshots},
               {"seed", spec.seed},
               {"boundary", to_string(spec.boundary)},
               {"guard_margin", spec.guard_margin},
               {"tagged_tier", to_string(spec.tagged_tier)},
               {"full_geometry", spec.full_geometry},
               {"workers", spec.workers}};
  j["loads"] = {{"mean_mbs", d.mean_mbs},       {"mean_faps", d.mean_faps},
                {"mean_us", d.mean_us},         {"expected_us", d.expected_us},
                {"mean_uin", d.mean_uin},       {"expected_uin", d.expected_uin},
                {"mean_uout", d.mean_uout},     {"expected_uout", d.expected_uout}};
  auto busy = [](double frac, double trials, double p, double z) {
    return json{{"empirical", frac}, {"trials", trials}, {"analytic", p},
                {"z", z},            {"within_3_sigma", std::abs(z) <= 3.0}};
  };
  j["busy"] = {{"fap", busy(d.busy_f, d.busy_f_trials, d.busy_f_analytic, d.busy_f_z)},
               {"mbs", busy(d.busy_m, d.busy_m_trials, d.busy_m_analytic, d.busy_m_z)}};
  j["resamples"] = d.resamples;
  j["warnings"] = d.warnings;
  j["runtime_s"] = d.runtime_s;
  return j.dump(indent) + "\n";
}

std::string replace_extension(const std::string& path, const std::string& ext) {
  fs::path p(path);
  p.replace_extension(ext);
  return p.string();
}

std::string add_suffix(const std::string& path, const std::string& suffix) {
  fs::path p(path);
  const auto ext = p.extension().string();
  p.replace_extension();
  return p.string() + suffix + ext;
}

}  // namespace hfemto
