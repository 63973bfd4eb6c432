#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hfemto/config.hpp"
#include "hfemto/curve.hpp"
#include "hfemto/fading.hpp"
#include "hfemto/rates.hpp"

namespace hfemto {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class Boundary { Torus, Guard };
enum class TaggedTier { Macro, Femto, Both };

std::string to_string(Boundary b);
std::string to_string(TaggedTier t);

/// Square [-h, h]^2. With wrap set, distances use the torus metric of
/// period 2h.
struct Square {
  double half_width = 0.0;
  bool wrap = false;

  double area() const { return 4.0 * half_width * half_width; }
  double distance(const Point& a, const Point& b) const;
  Point wrapped(Point p) const;
};

struct SimSpec {
  double window_half_width = 2000.0;  // L, window [-L, L]^2
  int snapshots = 1000;
  std::uint64_t seed = 1;
  TaggedTier tagged_tier = TaggedTier::Both;
  Boundary boundary = Boundary::Torus;
  double guard_margin = 500.0;  // only for Boundary::Guard
  /// Femto-UE interference distances measured from the UE's true position
  /// instead of its FAP's center.
  bool full_geometry = false;
  int workers = 1;
  std::vector<double> thresholds = log_grid();

  /// Region points are drawn in: the window itself for a torus, the window
  /// grown by guard_margin otherwise.
  Square sampling_region() const;
  /// Hard errors (snapshots < 1, non-positive window, ...).
  std::vector<std::string> validate() const;
  /// Soft problems, e.g. fewer than 50 expected MBSs in the window.
  std::vector<std::string> warnings(const NetworkConfig& cfg) const;
};

/// One realization of the network. Per-AP occupied subchannels are stored
/// as bit sets of `words` 64-bit words each.
struct Snapshot {
  /// Region points were drawn in, and the observation window inside it.
  /// Points inside the window come first in every list.
  Square region;
  Square window;
  std::vector<Point> mbs;
  std::vector<Point> faps;
  std::vector<int> fap_us;
  std::vector<int> fap_uin;
  std::vector<int> mbs_uout;
  int words = 1;
  std::vector<std::uint64_t> mbs_channels;
  std::vector<std::uint64_t> fap_channels;
  /// Number of outside nonsubscribers drawn, in total and inside the window.
  int outside_ues = 0;
  int window_outside_ues = 0;

  bool mbs_uses(std::size_t i, int channel) const;
  bool fap_uses(std::size_t i, int channel) const;
  /// Shared-channel set of each FAP, kept for inspection.
  std::vector<std::uint64_t> fap_shared;
};

struct SinrSample {
  double signal = 0.0;
  double i_m = 0.0;
  double i_f = 0.0;
  double sinr = 0.0;
};

/// Poisson(intensity * area) points uniform in the square.
std::vector<Point> sample_ppp(double intensity, const Square& region, std::mt19937_64& rng);
/// Same law, drawn as the points inside `inner` followed by those in the
/// ring between `inner` and `region`. The inner points do not depend on the
/// size of the ring.
std::vector<Point> sample_ppp(double intensity, const Square& inner, const Square& region,
                              std::mt19937_64& rng);

/// Neyman-Scott process: Poisson parents, each with Poisson(pi R_c^2
/// lambda_c) daughters uniform in the disk of radius R_c. With a wrapping
/// region the parents fall in the square and daughters wrap around;
/// otherwise parents fall in the square grown by R_c and daughters outside
/// the square are dropped.
std::vector<Point> sample_cluster(double lambda_p, double lambda_c, double R_c,
                                  const Square& region, std::mt19937_64& rng);
/// Parents inside `inner` are drawn first, as for sample_ppp.
std::vector<Point> sample_cluster(double lambda_p, double lambda_c, double R_c,
                                  const Square& inner, const Square& region, std::mt19937_64& rng);

/// Draws MBSs, FAPs, per-cell loads and subchannel occupancy. Each stage
/// uses its own generator seeded from one draw of `rng`.
Snapshot build_snapshot(const NetworkConfig& cfg, const SimSpec& spec, std::mt19937_64& rng);

/// SINR of a typical UE of the given tier (Macro or Femto) on a uniformly
/// chosen subchannel. Macro: UE at the origin served by the nearest MBS.
/// Femto: a FAP is added at the origin (with its own cluster for clustered
/// deployments) and the UE is placed at distance r, pdf 2r/R_f^2, from it.
/// Throws DomainError for a macro UE when the snapshot has no MBS.
SinrSample tagged_sinr(const Snapshot& snap, const NetworkConfig& cfg, TaggedTier tier,
                       std::mt19937_64& rng, bool full_geometry = false,
                       const FadingModel& fading = FadingModel::rayleigh(1.0));

struct SimDiagnostics {
  int snapshots = 0;
  int resamples = 0;
  double mean_mbs = 0.0;
  double mean_faps = 0.0;
  double mean_us = 0.0;
  double mean_uin = 0.0;
  double mean_uout = 0.0;
  double expected_us = 0.0;
  double expected_uin = 0.0;
  double expected_uout = 0.0;
  /// Fraction of FAPs / MBSs occupying the tagged subchannel, pooled over
  /// snapshots, with the analytic probability and a binomial z-score.
  double busy_f = 0.0;
  double busy_f_trials = 0.0;
  double busy_f_analytic = 0.0;
  double busy_f_z = 0.0;
  double busy_m = 0.0;
  double busy_m_trials = 0.0;
  double busy_m_analytic = 0.0;
  double busy_m_z = 0.0;
  double runtime_s = 0.0;
  std::vector<std::string> warnings;
};

struct SimResult {
  SinrCurve macro;
  SinrCurve femto;
  std::vector<SinrSample> macro_samples;
  std::vector<SinrSample> femto_samples;
  RateReport rates;
  SimDiagnostics diagnostics;
};

/// Seed of snapshot `index`'s private generator.
std::uint64_t snapshot_seed(std::uint64_t seed, std::uint64_t index);

/// Runs `spec.snapshots` independent snapshots. Results do not depend on
/// spec.workers. Throws std::invalid_argument for invalid inputs.
SimResult run(const NetworkConfig& cfg, const SimSpec& spec);

/// Empirical P{SINR <= T} on the given grid.
SinrCurve empirical_curve(const std::vector<SinrSample>& samples,
                          const std::vector<double>& thresholds, CurveLabel label);

}  // namespace hfemto
