#pragma once

#include <string>
#include <vector>

#include "hfemto/curve.hpp"
#include "hfemto/rates.hpp"
#include "hfemto/sim.hpp"

namespace hfemto {

/// Malformed input file (bad header, unparsable number, ragged rows).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Writes `content` to a temporary file next to `path` and renames it into
/// place. Throws InputError when the directory is not writable.
void write_file_atomic(const std::string& path, const std::string& content);

/// Shortest decimal that reads back to the same double.
std::string format_number(double v);

/// A pair of SINR CDFs on a common grid, as stored in `T,Z_m,Z_f` files.
struct CurvePair {
  std::vector<double> thresholds;
  std::vector<double> z_m;
  std::vector<double> z_f;
};

std::string curves_csv(const CurvePair& curves);
CurvePair parse_curves_csv(const std::string& text);
CurvePair read_curves_csv(const std::string& path);

struct SweepRow {
  double var = 0.0;
  RateReport rates;
};

/// `var,tau_n,tau_s,tau_m,tau_f`, rates scaled by `unit` (1 for nats).
std::string sweep_csv(const std::vector<SweepRow>& rows, double unit = 1.0);

std::string rate_report_json(const RateReport& r, double unit = 1.0, int indent = 2);
std::string diagnostics_json(const SimDiagnostics& d, const SimSpec& spec,
                             const RateReport& r, double unit = 1.0, int indent = 2);

/// path with its extension replaced (or appended) by `ext`, which includes
/// the dot. "out/a.csv" -> "out/a.json".
std::string replace_extension(const std::string& path, const std::string& ext);
/// "out/a.csv" -> "out/a_sim.csv".
std::string add_suffix(const std::string& path, const std::string& suffix);

}  // namespace hfemto
