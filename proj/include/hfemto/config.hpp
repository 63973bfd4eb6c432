#pragma once

#include <string>
#include <variant>
#include <vector>

namespace hfemto {

/// FAPs form a homogeneous PPP of intensity NetworkConfig::lambda_f.
struct PoissonFaps {};

/// FAPs form a Neyman-Scott process: parent PPP of intensity lambda_p, each
/// parent carrying a PPP of intensity lambda_c inside a disk of radius R_c.
struct ClusteredFaps {
  double lambda_p = 0.0;
  double lambda_c = 0.0;
  double R_c = 0.0;

  double mean_cluster_size() const;
  double fap_intensity() const;  // pi R_c^2 lambda_c lambda_p
};

using Deployment = std::variant<PoissonFaps, ClusteredFaps>;

/// Physical and deployment parameters of the two-tier network. Intensities
/// are points per m^2, powers are linear watts, W is a linear factor.
struct NetworkConfig {
  double lambda_m = 0.0;
  double lambda_f = 0.0;
  Deployment deployment = PoissonFaps{};

  double R_f = 0.0;
  double lambda_s = 0.0;
  double lambda_in = 0.0;
  double lambda_out = 0.0;

  double P_m = 0.0;
  double P_f = 0.0;

  int M = 1;
  int M_s = 0;

  double alpha = 4.0;
  double mu = 1.0;
  double W = 1.0;
  double sigma2 = 0.0;

  int M_r() const { return M - M_s; }
  bool clustered() const { return std::holds_alternative<ClusteredFaps>(deployment); }
  /// Throws MisuseError for PPP deployments.
  const ClusteredFaps& clusters() const;

  /// Switches to a clustered deployment and derives lambda_f from it.
  NetworkConfig with_clusters(double lambda_p, double lambda_c, double R_c) const;
  /// Switches to a PPP deployment keeping the current lambda_f.
  NetworkConfig with_poisson_faps() const;
};

/// Default parameters (39 dBm / 13 dBm powers, M = 20, alpha = 4, W = -6 dB,
/// interference-limited). M_s defaults to 10, the setting the SINR curves
/// are usually drawn for.
NetworkConfig default_config();

/// default_config() with the default clustered deployment
/// (lambda_p = 1e-5, lambda_c = 0.00127, R_c = 50 m).
NetworkConfig default_cluster_config();

/// Every violated invariant, as a human-readable message. Empty means valid.
std::vector<std::string> validate(const NetworkConfig& cfg);

/// Physically dubious but legal settings (e.g. femtocells that are not small
/// compared to the macro cells).
std::vector<std::string> plausibility_warnings(const NetworkConfig& cfg);

/// Throws std::invalid_argument listing all violations if cfg is invalid.
void require_valid(const NetworkConfig& cfg);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace hfemto
