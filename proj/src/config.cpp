#include "hfemto/config.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hfemto/errors.hpp"
#include "hfemto/specfun.hpp"

namespace hfemto {

double ClusteredFaps::mean_cluster_size() const { return kPi * R_c * R_c * lambda_c; }

double ClusteredFaps::fap_intensity() const { return mean_cluster_size() * lambda_p; }

const ClusteredFaps& NetworkConfig::clusters() const {
  if (const auto* c = std::get_if<ClusteredFaps>(&deployment)) return *c;
  throw MisuseError("configuration does not use a clustered FAP deployment");
}

NetworkConfig NetworkConfig::with_clusters(double lambda_p, double lambda_c, double R_c) const {
  NetworkConfig out = *this;
  ClusteredFaps c{lambda_p, lambda_c, R_c};
  out.lambda_f = c.fap_intensity();
  out.deployment = c;
  return out;
}

NetworkConfig NetworkConfig::with_poisson_faps() const {
  NetworkConfig out = *this;
  out.deployment = PoissonFaps{};
  return out;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

NetworkConfig default_config() {
  NetworkConfig cfg;
  cfg.lambda_m = 1e-5;
  cfg.lambda_f = 1e-4;
  cfg.R_f = 10.0;
  cfg.lambda_s = 0.015;
  cfg.lambda_in = 0.015;
  cfg.lambda_out = 1e-4;
  cfg.P_m = dbm_to_watts(39.0);
  cfg.P_f = dbm_to_watts(13.0);
  cfg.M = 20;
  cfg.M_s = 10;
  cfg.alpha = 4.0;
  cfg.mu = 1.0;
  cfg.W = db_to_linear(-6.0);
  cfg.sigma2 = 0.0;
  return cfg;
}

NetworkConfig default_cluster_config() {
  return default_config().with_clusters(1e-5, 0.00127, 50.0);
}

std::vector<std::string> validate(const NetworkConfig& cfg) {
  std::vector<std::string> out;
  auto nonneg = [&](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) out.push_back(std::string(name) + " must be a finite value >= 0");
  };
  if (!(cfg.alpha > 2.0) || !std::isfinite(cfg.alpha)) out.emplace_back("alpha must exceed 2");
  nonneg(cfg.lambda_m, "lambda_m");
  nonneg(cfg.lambda_f, "lambda_f");
  nonneg(cfg.lambda_s, "lambda_s");
  nonneg(cfg.lambda_in, "lambda_in");
  nonneg(cfg.lambda_out, "lambda_out");
  nonneg(cfg.sigma2, "sigma2");
  if (!(cfg.lambda_m > 0.0)) out.emplace_back("lambda_m must be positive");
  if (!(cfg.R_f > 0.0) || !std::isfinite(cfg.R_f)) out.emplace_back("R_f must be positive");
  if (!(cfg.P_m > 0.0) || !std::isfinite(cfg.P_m)) out.emplace_back("P_m must be positive");
  if (!(cfg.P_f > 0.0) || !std::isfinite(cfg.P_f)) out.emplace_back("P_f must be positive");
  if (!(cfg.mu > 0.0) || !std::isfinite(cfg.mu)) out.emplace_back("mu must be positive");
  if (!(cfg.W > 0.0 && cfg.W <= 1.0)) out.emplace_back("W must lie in (0, 1]");
  if (cfg.M < 1) out.emplace_back("M must be at least 1");
  if (cfg.M_s < 0) out.emplace_back("M_s must be >= 0");
  if (cfg.M_s > cfg.M) out.emplace_back("M_s exceeds M");
  if (const auto* c = std::get_if<ClusteredFaps>(&cfg.deployment)) {
    nonneg(c->lambda_p, "lambda_p");
    nonneg(c->lambda_c, "lambda_c");
    if (!(c->R_c > 0.0) || !std::isfinite(c->R_c)) out.emplace_back("R_c must be positive");
    const double derived = c->fap_intensity();
    const double scale = std::max(std::abs(derived), std::abs(cfg.lambda_f));
    if (std::abs(derived - cfg.lambda_f) > 1e-9 * scale) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "lambda_f (" << cfg.lambda_f << ") differs from pi R_c^2 lambda_c lambda_p ("
          << derived << ")";
      out.push_back(msg.str());
    }
  }
  return out;
}

std::vector<std::string> plausibility_warnings(const NetworkConfig& cfg) {
  std::vector<std::string> out;
  const double occupancy = kPi * cfg.R_f * cfg.R_f * cfg.lambda_m;
  if (occupancy > 0.01) {
    std::ostringstream msg;
    msg << "femtocell disk covers " << occupancy
        << " of a mean macro cell (pi R_f^2 lambda_m > 0.01); the point-like "
           "femtocell approximation degrades";
    out.push_back(msg.str());
  }
  return out;
}

void require_valid(const NetworkConfig& cfg) {
  const auto violations = validate(cfg);
  if (violations.empty()) return;
  std::string msg = "invalid network configuration:";
  for (const auto& v : violations) msg += "\n  - " + v;
  throw std::invalid_argument(msg);
}

}  // namespace hfemto
