#include "hfemto/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "hfemto/config_io.hpp"
#include "hfemto/errors.hpp"
#include "hfemto/load.hpp"
#include "hfemto/specfun.hpp"

namespace hfemto {

std::string to_string(Boundary b) { return b == Boundary::Torus ? "torus" : "guard"; }

std::string to_string(TaggedTier t) {
  switch (t) {
    case TaggedTier::Macro: return "macro";
    case TaggedTier::Femto: return "femto";
    case TaggedTier::Both: return "both";
  }
  return "unknown";
}

double Square::distance(const Point& a, const Point& b) const {
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  if (wrap) {
    const double period = 2.0 * half_width;
    dx -= period * std::round(dx / period);
    dy -= period * std::round(dy / period);
  }
  return std::hypot(dx, dy);
}

Point Square::wrapped(Point p) const {
  const double period = 2.0 * half_width;
  p.x -= period * std::floor((p.x + half_width) / period);
  p.y -= period * std::floor((p.y + half_width) / period);
  return p;
}

Square SimSpec::sampling_region() const {
  if (boundary == Boundary::Torus) return Square{window_half_width, true};
  return Square{window_half_width + guard_margin, false};
}

std::vector<std::string> SimSpec::validate() const {
  std::vector<std::string> out;
  if (!(window_half_width > 0.0) || !std::isfinite(window_half_width)) {
    out.emplace_back("window half-width must be positive");
  }
  if (snapshots < 1) out.emplace_back("snapshots must be at least 1");
  if (workers < 1) out.emplace_back("workers must be at least 1");
  if (boundary == Boundary::Guard && !(guard_margin >= 0.0)) {
    out.emplace_back("guard margin must be >= 0");
  }
  if (thresholds.empty()) out.emplace_back("threshold grid is empty");
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > thresholds[i - 1])) {
      out.emplace_back("thresholds must be strictly ascending");
      break;
    }
  }
  return out;
}

std::vector<std::string> SimSpec::warnings(const NetworkConfig& cfg) const {
  std::vector<std::string> out;
  const double expected = cfg.lambda_m * 4.0 * window_half_width * window_half_width;
  if (expected < 50.0) {
    out.push_back("window holds only " + std::to_string(expected) +
                  " MBSs on average (< 50); edge effects may bias results");
  }
  return out;
}

bool Snapshot::mbs_uses(std::size_t i, int channel) const {
  return (mbs_channels[i * words + channel / 64] >> (channel % 64)) & 1U;
}

bool Snapshot::fap_uses(std::size_t i, int channel) const {
  return (fap_channels[i * words + channel / 64] >> (channel % 64)) & 1U;
}

namespace {

using Bits = std::vector<std::uint64_t>;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Small counter-seeded generator for per-AP substreams.
struct SplitMix {
  using result_type = std::uint64_t;
  std::uint64_t state;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return splitmix64(state); }
};

void set_bit(std::uint64_t* bits, int c) { bits[c / 64] |= std::uint64_t{1} << (c % 64); }

bool has_bit(const std::uint64_t* bits, int c) { return (bits[c / 64] >> (c % 64)) & 1U; }

// Moves k uniformly chosen entries of pool[first, last) to its front part.
template <class Rng>
void choose(std::vector<int>& pool, int first, int last, int k, Rng& rng) {
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(first + i, last - 1);
    std::swap(pool[first + i], pool[pick(rng)]);
  }
}

// Channel occupancy of one FAP: M_s random shared channels, then
// min(U_s, M_r) reserved and min(U_in, M_s) shared ones in use.
template <class Rng>
void occupy_fap(const NetworkConfig& cfg, int us, int uin, std::vector<int>& pool,
                std::uint64_t* used, std::uint64_t* shared, Rng& rng) {
  const int M = cfg.M;
  const int Ms = cfg.M_s;
  std::iota(pool.begin(), pool.end(), 0);
  choose(pool, 0, M, Ms, rng);  // pool[0, Ms) shared, pool[Ms, M) reserved
  if (shared) {
    for (int i = 0; i < Ms; ++i) set_bit(shared, pool[i]);
  }
  const int n_shared = std::min(uin, Ms);
  const int n_reserved = std::min(us, M - Ms);
  choose(pool, 0, Ms, n_shared, rng);
  choose(pool, Ms, M, n_reserved, rng);
  for (int i = 0; i < n_shared; ++i) set_bit(used, pool[i]);
  for (int i = 0; i < n_reserved; ++i) set_bit(used, pool[Ms + i]);
}

template <class Rng>
void occupy_mbs(int M, int uout, std::vector<int>& pool, std::uint64_t* used, Rng& rng) {
  std::iota(pool.begin(), pool.end(), 0);
  const int n = std::min(uout, M);
  choose(pool, 0, M, n, rng);
  for (int i = 0; i < n; ++i) set_bit(used, pool[i]);
}

Point uniform_in_disk(const Point& center, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double th = 2.0 * kPi * u(rng);
  return {center.x + r * std::cos(th), center.y + r * std::sin(th)};
}

// Nearest-point queries by uniform bucketing.
class Grid {
 public:
  Grid(const std::vector<Point>& pts, const Square& region, double cell_hint)
      : pts_(pts), region_(region) {
    const double side = 2.0 * region.half_width;
    n_ = std::clamp(static_cast<int>(side / std::max(cell_hint, 1e-9)), 1, 512);
    cell_ = side / n_;
    cells_.resize(static_cast<std::size_t>(n_) * n_);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cells_[index(cell_of(pts[i].x), cell_of(pts[i].y))].push_back(static_cast<int>(i));
    }
  }

  int nearest(const Point& p) const {
    if (pts_.empty()) return -1;
    const int ci = cell_of(p.x);
    const int cj = cell_of(p.y);
    int best = -1;
    double best_d = kInf;
    for (int k = 0;; ++k) {
      if (2 * k + 1 >= n_ + 2) {
        // The ring has wrapped past the whole grid: finish by brute force.
        for (std::size_t i = 0; i < pts_.size(); ++i) {
          const double d = region_.distance(p, pts_[i]);
          if (d < best_d) {
            best_d = d;
            best = static_cast<int>(i);
          }
        }
        return best;
      }
      for (int di = -k; di <= k; ++di) {
        for (int dj = -k; dj <= k; ++dj) {
          if (std::max(std::abs(di), std::abs(dj)) != k) continue;
          int i = ci + di;
          int j = cj + dj;
          if (region_.wrap) {
            i = ((i % n_) + n_) % n_;
            j = ((j % n_) + n_) % n_;
          } else if (i < 0 || j < 0 || i >= n_ || j >= n_) {
            continue;
          }
          for (int idx : cells_[index(i, j)]) {
            const double d = region_.distance(p, pts_[idx]);
            if (d < best_d) {
              best_d = d;
              best = idx;
            }
          }
        }
      }
      if (best >= 0 && best_d <= k * cell_) return best;
    }
  }

 private:
  int cell_of(double v) const {
    return std::clamp(static_cast<int>((v + region_.half_width) / cell_), 0, n_ - 1);
  }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  const std::vector<Point>& pts_;
  Square region_;
  int n_ = 1;
  double cell_ = 1.0;
  std::vector<std::vector<int>> cells_;
};

double path_gain(double d, double alpha) { return std::pow(d, -alpha); }

}  // namespace

std::uint64_t snapshot_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state = a ^ (index * 0xD1B54A32D192ED03ULL);
  splitmix64(state);
  return splitmix64(state);
}

std::vector<Point> sample_ppp(double intensity, const Square& region, std::mt19937_64& rng) {
  return sample_ppp(intensity, region, region, rng);
}

std::vector<Point> sample_ppp(double intensity, const Square& inner, const Square& region,
                              std::mt19937_64& rng) {
  std::vector<Point> out;
  if (!(intensity > 0.0)) return out;
  const double h = std::min(inner.half_width, region.half_width);
  std::poisson_distribution<long> inner_count(intensity * 4.0 * h * h);
  const long n = inner_count(rng);
  std::uniform_real_distribution<double> u(-h, h);
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double x = u(rng);
    out.push_back({x, u(rng)});
  }
  const double ring_area = region.area() - 4.0 * h * h;
  if (ring_area > 0.0) {
    std::poisson_distribution<long> ring_count(intensity * ring_area);
    const long m = ring_count(rng);
    std::uniform_real_distribution<double> v(-region.half_width, region.half_width);
    for (long i = 0; i < m;) {
      const Point p{v(rng), v(rng)};
      if (std::abs(p.x) < h && std::abs(p.y) < h) continue;
      out.push_back(p);
      ++i;
    }
  }
  return out;
}

std::vector<Point> sample_cluster(double lambda_p, double lambda_c, double R_c,
                                  const Square& region, std::mt19937_64& rng) {
  return sample_cluster(lambda_p, lambda_c, R_c, region, region, rng);
}

std::vector<Point> sample_cluster(double lambda_p, double lambda_c, double R_c,
                                  const Square& inner, const Square& region, std::mt19937_64& rng) {
  std::vector<Point> out;
  if (!(lambda_p > 0.0) || !(lambda_c > 0.0)) return out;
  const Square parent_region =
      region.wrap ? region : Square{region.half_width + R_c, false};
  const auto parents = sample_ppp(lambda_p, inner, parent_region, rng);
  std::poisson_distribution<int> size(kPi * R_c * R_c * lambda_c);
  for (const auto& p : parents) {
    const int n = size(rng);
    for (int i = 0; i < n; ++i) {
      Point d = uniform_in_disk(p, R_c, rng);
      if (region.wrap) {
        out.push_back(region.wrapped(d));
      } else if (std::abs(d.x) <= region.half_width && std::abs(d.y) <= region.half_width) {
        out.push_back(d);
      }
    }
  }
  return out;
}

Snapshot build_snapshot(const NetworkConfig& cfg, const SimSpec& spec, std::mt19937_64& rng) {
  Snapshot s;
  s.region = spec.sampling_region();
  s.window = Square{spec.window_half_width, s.region.wrap};
  s.words = (cfg.M + 63) / 64;
  const std::uint64_t base = rng();
  std::mt19937_64 mbs_rng(snapshot_seed(base, 0));
  std::mt19937_64 fap_rng(snapshot_seed(base, 1));
  std::mt19937_64 load_rng(snapshot_seed(base, 2));
  std::mt19937_64 ue_rng(snapshot_seed(base, 3));
  const std::uint64_t fap_channel_base = snapshot_seed(base, 4);
  const std::uint64_t mbs_channel_base = snapshot_seed(base, 5);

  s.mbs = sample_ppp(cfg.lambda_m, s.window, s.region, mbs_rng);
  if (const auto* c = std::get_if<ClusteredFaps>(&cfg.deployment)) {
    s.faps = sample_cluster(c->lambda_p, c->lambda_c, c->R_c, s.window, s.region, fap_rng);
  } else {
    s.faps = sample_ppp(cfg.lambda_f, s.window, s.region, fap_rng);
  }

  const double disk = kPi * cfg.R_f * cfg.R_f;
  std::poisson_distribution<int> us_law(std::max(cfg.lambda_s * disk, 0.0));
  std::poisson_distribution<int> uin_law(std::max(cfg.lambda_in * disk, 0.0));
  s.fap_us.resize(s.faps.size());
  s.fap_uin.resize(s.faps.size());
  for (std::size_t i = 0; i < s.faps.size(); ++i) {
    s.fap_us[i] = cfg.lambda_s > 0.0 ? us_law(load_rng) : 0;
    s.fap_uin[i] = cfg.lambda_in > 0.0 ? uin_law(load_rng) : 0;
  }

  s.mbs_uout.assign(s.mbs.size(), 0);
  const auto outside = sample_ppp(cfg.lambda_out, s.window, s.region, ue_rng);
  s.outside_ues = static_cast<int>(outside.size());
  for (const auto& p : outside) {
    if (std::abs(p.x) <= s.window.half_width && std::abs(p.y) <= s.window.half_width) ++s.window_outside_ues;
  }
  if (!s.mbs.empty()) {
    Grid grid(s.mbs, s.region, 1.0 / std::sqrt(cfg.lambda_m));
    for (const auto& p : outside) ++s.mbs_uout[grid.nearest(p)];
  }

  std::vector<int> pool(static_cast<std::size_t>(cfg.M));
  s.fap_channels.assign(s.faps.size() * s.words, 0);
  s.fap_shared.assign(s.faps.size() * s.words, 0);
  for (std::size_t i = 0; i < s.faps.size(); ++i) {
    SplitMix g{snapshot_seed(fap_channel_base, i)};
    occupy_fap(cfg, s.fap_us[i], s.fap_uin[i], pool, &s.fap_channels[i * s.words],
               &s.fap_shared[i * s.words], g);
  }
  s.mbs_channels.assign(s.mbs.size() * s.words, 0);
  for (std::size_t i = 0; i < s.mbs.size(); ++i) {
    SplitMix g{snapshot_seed(mbs_channel_base, i)};
    occupy_mbs(cfg.M, s.mbs_uout[i], pool, &s.mbs_channels[i * s.words], g);
  }
  return s;
}

SinrSample tagged_sinr(const Snapshot& snap, const NetworkConfig& cfg, TaggedTier tier,
                       std::mt19937_64& rng, bool full_geometry, const FadingModel& fading) {
  if (tier == TaggedTier::Both) throw MisuseError("tagged_sinr: choose Macro or Femto");
  std::uniform_int_distribution<int> channel_law(0, cfg.M - 1);
  std::exponential_distribution<double> serving(cfg.mu);
  const int c = channel_law(rng);
  const Point origin{0.0, 0.0};
  SinrSample out;
  // Separate streams per interferer family keep the draws for points inside
  // the window unchanged when guard-ring points are added.
  const std::uint64_t base = rng();
  std::mt19937_64 mbs_fading(snapshot_seed(base, 0));
  std::mt19937_64 fap_fading(snapshot_seed(base, 1));
  std::mt19937_64 sibling_rng(snapshot_seed(base, 2));

  if (tier == TaggedTier::Macro) {
    if (snap.mbs.empty()) throw DomainError("tagged_sinr: snapshot has no MBS");
    std::size_t serving_idx = 0;
    double best = kInf;
    for (std::size_t i = 0; i < snap.mbs.size(); ++i) {
      const double d = snap.region.distance(origin, snap.mbs[i]);
      if (d < best) {
        best = d;
        serving_idx = i;
      }
    }
    out.signal = cfg.P_m * serving(rng) * path_gain(best, cfg.alpha);
    for (std::size_t i = 0; i < snap.mbs.size(); ++i) {
      const double g = fading.sample(mbs_fading);
      if (i == serving_idx || !snap.mbs_uses(i, c)) continue;
      out.i_m += cfg.P_m * g *
                 path_gain(snap.region.distance(origin, snap.mbs[i]), cfg.alpha);
    }
    for (std::size_t i = 0; i < snap.faps.size(); ++i) {
      const double g = fading.sample(fap_fading);
      if (!snap.fap_uses(i, c)) continue;
      out.i_f += cfg.W * cfg.P_f * g *
                 path_gain(snap.region.distance(origin, snap.faps[i]), cfg.alpha);
    }
  } else {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = cfg.R_f * std::sqrt(u(rng));
    const double th = 2.0 * kPi * u(rng);
    const Point rx = full_geometry ? Point{r * std::cos(th), r * std::sin(th)} : origin;
    out.signal = cfg.P_f * serving(rng) * path_gain(r, cfg.alpha);

    auto add_fap = [&](const Point& p, double g) {
      out.i_f += cfg.W * cfg.W * cfg.P_f * g * path_gain(snap.region.distance(rx, p), cfg.alpha);
    };
    for (std::size_t i = 0; i < snap.faps.size(); ++i) {
      const double g = fading.sample(fap_fading);
      if (snap.fap_uses(i, c)) add_fap(snap.faps[i], g);
    }
    // Remaining members of the tagged FAP's own cluster.
    if (const auto* cl = std::get_if<ClusteredFaps>(&cfg.deployment)) {
      const Point center = uniform_in_disk(origin, cl->R_c, sibling_rng);
      std::poisson_distribution<int> size(kPi * cl->R_c * cl->R_c * cl->lambda_c);
      const int n = cl->lambda_c > 0.0 ? size(sibling_rng) : 0;
      const double disk = kPi * cfg.R_f * cfg.R_f;
      std::poisson_distribution<int> us_law(std::max(cfg.lambda_s * disk, 0.0));
      std::poisson_distribution<int> uin_law(std::max(cfg.lambda_in * disk, 0.0));
      std::vector<int> pool(static_cast<std::size_t>(cfg.M));
      Bits used(static_cast<std::size_t>(snap.words));
      for (int k = 0; k < n; ++k) {
        const Point p = snap.region.wrap ? snap.region.wrapped(uniform_in_disk(center, cl->R_c, sibling_rng))
                                         : uniform_in_disk(center, cl->R_c, sibling_rng);
        const int us = cfg.lambda_s > 0.0 ? us_law(sibling_rng) : 0;
        const int uin = cfg.lambda_in > 0.0 ? uin_law(sibling_rng) : 0;
        std::fill(used.begin(), used.end(), 0);
        occupy_fap(cfg, us, uin, pool, used.data(), nullptr, sibling_rng);
        const double g = fading.sample(sibling_rng);
        if (has_bit(used.data(), c)) add_fap(p, g);
      }
    }
    for (std::size_t i = 0; i < snap.mbs.size(); ++i) {
      const double g = fading.sample(mbs_fading);
      if (!snap.mbs_uses(i, c)) continue;
      out.i_m += cfg.W * cfg.P_m * g *
                 path_gain(snap.region.distance(rx, snap.mbs[i]), cfg.alpha);
    }
  }
  out.sinr = out.signal / (out.i_m + out.i_f + cfg.sigma2);
  return out;
}

SinrCurve empirical_curve(const std::vector<SinrSample>& samples,
                          const std::vector<double>& thresholds, CurveLabel label) {
  std::vector<double> sorted;
  sorted.reserve(samples.size());
  for (const auto& s : samples) sorted.push_back(s.sinr);
  std::sort(sorted.begin(), sorted.end());
  SinrCurve curve;
  curve.label = label;
  curve.thresholds = thresholds;
  for (double t : thresholds) {
    const auto n = std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
    curve.cdf.push_back(sorted.empty() ? 0.0 : static_cast<double>(n) / sorted.size());
  }
  return curve;
}

namespace {

struct Outcome {
  SinrSample macro;
  SinrSample femto;
  int resamples = 0;
  double n_mbs = 0, n_faps = 0;
  double sum_us = 0, sum_uin = 0, sum_uout = 0;
  double busy_f = 0, busy_m = 0;
  double out_cells = 0, out_share = 0;
  double in_cells = 0, in_share = 0;
  double s_cells = 0, s_share = 0;
  double outside_ues = 0, inside_ues = 0;
};

Outcome run_snapshot(const NetworkConfig& cfg, const SimSpec& spec, const FadingModel& fading,
                     std::uint64_t index) {
  std::mt19937_64 rng(snapshot_seed(spec.seed, index));
  Outcome o;
  const bool want_macro = spec.tagged_tier != TaggedTier::Femto;
  const bool want_femto = spec.tagged_tier != TaggedTier::Macro;
  Snapshot snap = build_snapshot(cfg, spec, rng);
  while (want_macro && snap.mbs.empty()) {
    if (++o.resamples > 1000) throw DomainError("no MBS in 1000 consecutive snapshots");
    snap = build_snapshot(cfg, spec, rng);
  }
  std::uniform_int_distribution<int> channel_law(0, cfg.M - 1);
  const int c = channel_law(rng);

  auto inside = [&](const Point& p) {
    return std::abs(p.x) <= spec.window_half_width && std::abs(p.y) <= spec.window_half_width;
  };
  o.n_mbs = 0.0;
  o.n_faps = 0.0;
  for (std::size_t i = 0; i < snap.faps.size(); ++i) {
    if (!inside(snap.faps[i])) continue;
    o.n_faps += 1.0;
    o.sum_us += snap.fap_us[i];
    o.sum_uin += snap.fap_uin[i];
    o.busy_f += snap.fap_uses(i, c) ? 1.0 : 0.0;
    if (snap.fap_uin[i] > 0) {
      o.in_cells += 1.0;
      o.in_share += std::min(1.0, static_cast<double>(cfg.M_s) / snap.fap_uin[i]);
    }
    if (snap.fap_us[i] > 0) {
      o.s_cells += 1.0;
      o.s_share += std::min(1.0, static_cast<double>(cfg.M_r()) / snap.fap_us[i]);
    }
  }
  for (std::size_t i = 0; i < snap.mbs.size(); ++i) {
    if (!inside(snap.mbs[i])) continue;
    o.n_mbs += 1.0;
    o.sum_uout += snap.mbs_uout[i];
    o.busy_m += snap.mbs_uses(i, c) ? 1.0 : 0.0;
    if (snap.mbs_uout[i] > 0) {
      o.out_cells += 1.0;
      o.out_share += std::min(1.0, static_cast<double>(cfg.M) / snap.mbs_uout[i]);
    }
  }
  o.outside_ues = snap.window_outside_ues;
  o.inside_ues = o.sum_uin;

  if (want_macro) o.macro = tagged_sinr(snap, cfg, TaggedTier::Macro, rng, false, fading);
  if (want_femto) {
    o.femto = tagged_sinr(snap, cfg, TaggedTier::Femto, rng, spec.full_geometry, fading);
  }
  return o;
}

double mean_log1p(const std::vector<SinrSample>& v) {
  if (v.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& s : v) sum += std::log1p(s.sinr);
  return sum / static_cast<double>(v.size());
}

double z_score(double hits, double trials, double p) {
  if (trials <= 0.0) return 0.0;
  const double var = trials * p * (1.0 - p);
  if (var <= 0.0) return hits == trials * p ? 0.0 : kInf;
  return (hits - trials * p) / std::sqrt(var);
}

}  // namespace

SimResult run(const NetworkConfig& cfg, const SimSpec& spec) {
  require_valid(cfg);
  if (auto problems = spec.validate(); !problems.empty()) {
    std::string msg = "invalid simulation spec:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw std::invalid_argument(msg);
  }
  const auto start = std::chrono::steady_clock::now();
  const FadingModel fading = FadingModel::rayleigh(cfg.mu);
  const auto n = static_cast<std::size_t>(spec.snapshots);
  std::vector<Outcome> outcomes(n);

  const int workers = std::min<int>(spec.workers, spec.snapshots);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) outcomes[i] = run_snapshot(cfg, spec, fading, i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            outcomes[i] = run_snapshot(cfg, spec, fading, i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  SimResult res;
  Outcome total;
  const bool want_macro = spec.tagged_tier != TaggedTier::Femto;
  const bool want_femto = spec.tagged_tier != TaggedTier::Macro;
  for (const auto& o : outcomes) {
    if (want_macro) res.macro_samples.push_back(o.macro);
    if (want_femto) res.femto_samples.push_back(o.femto);
    total.resamples += o.resamples;
    total.n_mbs += o.n_mbs;
    total.n_faps += o.n_faps;
    total.sum_us += o.sum_us;
    total.sum_uin += o.sum_uin;
    total.sum_uout += o.sum_uout;
    total.busy_f += o.busy_f;
    total.busy_m += o.busy_m;
    total.out_cells += o.out_cells;
    total.out_share += o.out_share;
    total.in_cells += o.in_cells;
    total.in_share += o.in_share;
    total.s_cells += o.s_cells;
    total.s_share += o.s_share;
    total.outside_ues += o.outside_ues;
    total.inside_ues += o.inside_ues;
  }

  res.macro = empirical_curve(res.macro_samples, spec.thresholds, CurveLabel::EmpiricalMacro);
  res.femto = empirical_curve(res.femto_samples, spec.thresholds, CurveLabel::EmpiricalFemto);

  auto& r = res.rates;
  r.tau_m = mean_log1p(res.macro_samples);
  r.tau_f = mean_log1p(res.femto_samples);
  r.tau_out = total.out_cells > 0 ? r.tau_m * total.out_share / total.out_cells : r.tau_m;
  if (cfg.M_s == 0) {
    r.tau_in = 0.0;
  } else {
    r.tau_in = total.in_cells > 0 ? r.tau_f * total.in_share / total.in_cells : r.tau_f;
  }
  if (cfg.M_r() == 0) {
    r.tau_s = 0.0;
  } else {
    r.tau_s = total.s_cells > 0 ? r.tau_f * total.s_share / total.s_cells : r.tau_f;
  }
  const double people = total.outside_ues + total.inside_ues;
  r.tau_n = people > 0 ? (total.outside_ues * r.tau_out + total.inside_ues * r.tau_in) / people
                       : 0.0;
  r.config_hash = config_hash(cfg);

  auto& d = res.diagnostics;
  const double snaps = static_cast<double>(n);
  const double disk = kPi * cfg.R_f * cfg.R_f;
  d.snapshots = spec.snapshots;
  d.resamples = total.resamples;
  d.mean_mbs = total.n_mbs / snaps;
  d.mean_faps = total.n_faps / snaps;
  d.mean_us = total.n_faps > 0 ? total.sum_us / total.n_faps : 0.0;
  d.mean_uin = total.n_faps > 0 ? total.sum_uin / total.n_faps : 0.0;
  d.mean_uout = total.n_mbs > 0 ? total.sum_uout / total.n_mbs : 0.0;
  d.expected_us = cfg.lambda_s * disk;
  d.expected_uin = cfg.lambda_in * disk;
  d.expected_uout = cfg.lambda_out / cfg.lambda_m;
  d.busy_f_trials = total.n_faps;
  d.busy_f = total.n_faps > 0 ? total.busy_f / total.n_faps : 0.0;
  d.busy_f_analytic = p_busy_f(cfg);
  d.busy_f_z = z_score(total.busy_f, total.n_faps, d.busy_f_analytic);
  d.busy_m_trials = total.n_mbs;
  d.busy_m = total.n_mbs > 0 ? total.busy_m / total.n_mbs : 0.0;
  d.busy_m_analytic = p_busy_m(cfg);
  d.busy_m_z = z_score(total.busy_m, total.n_mbs, d.busy_m_analytic);
  d.warnings = spec.warnings(cfg);
  d.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace hfemto
