#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "combwalk/base_graph.hpp"
#include "combwalk/comb_graph.hpp"
#include "combwalk/lattice_comb.hpp"
#include "combwalk/profile.hpp"

namespace combwalk {

inline constexpr std::uint32_t kNoRegion = 0xffffffffu;

struct SeedPair {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
};

/// Collisions of two independent walks from a common start. Collisions are
/// binned by (radial index k, height h); the radial index is the profile
/// radius unless an explicit index (e.g. from exploration sets) is given.
struct CollisionRecord {
  std::uint64_t horizon = 0;
  std::vector<std::uint64_t> times;  // t with X_t = Y_t, increasing, includes 0
  std::uint64_t total = 0;
  std::uint64_t skeleton = 0;        // collisions at height 0
  std::uint64_t unassigned = 0;      // collisions at base vertices without an index
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> cells;
  SeedPair seeds;

  /// Collisions in {h <= hi, h >= lo} at radial index k.
  std::uint64_t count(std::uint64_t k, std::uint64_t lo, std::uint64_t hi) const;
  /// Z_{k,l}: heights 0..l.
  std::uint64_t z(std::uint64_t k, std::uint64_t ell) const { return count(k, 0, ell); }
  /// Z~_{k,l}: heights with l/3 <= h <= 2l/3.
  std::uint64_t z_tilde(std::uint64_t k, std::uint64_t ell) const;
};

/// Walk X uses stream(seeds.x, 0), Y uses stream(seeds.y, 0).
/// Errc::horizon_exceeds_truncation if horizon > comb.truncation_radius(start).
/// `radial_index` maps base vertices to k (kNoRegion for none).
CollisionRecord run_collision(const CombGraph& comb, VertexId start, std::uint64_t horizon, SeedPair seeds,
                              std::span<const std::uint32_t> radial_index = {});
CollisionRecord run_collision(const LatticeComb& comb, LatticeVertex start, std::uint64_t horizon, SeedPair seeds);

struct ExplorationPartition {
  double alpha = 1.0;
  std::vector<std::vector<VertexId>> sets;  // sets[k-1] = A_k
  std::vector<std::size_t> min_distance;    // min_{x in A_k} d(o, x)
  /// Vertices ran out before kmax; the last set may be short.
  bool truncated = false;
};

/// Greedy nearest-first batches of floor(k^{alpha-1}) vertices; ties by
/// coordinates (x, then y), then id. Errc::bad_parameter unless alpha in [1, 2].
ExplorationPartition exploration_sets(const BaseGraph& base, VertexId o, double alpha, std::size_t kmax);

/// Base vertex -> k with vertex in A_k, kNoRegion elsewhere.
std::vector<std::uint32_t> exploration_index(const ExplorationPartition& p, std::size_t base_vertex_count);

/// Dyadic heights l = 2^j, j = 1..j0, with j0 = min{j >= 1 : 2^j >= max_height},
/// raised by one when the middle-third bands would miss the top heights.
std::vector<std::uint64_t> dyadic_bands(std::uint64_t max_height);

/// Middle-third band of heights [ceil(l/3), floor(2l/3)].
std::pair<std::uint64_t, std::uint64_t> middle_third(std::uint64_t ell);

struct RegionBand {
  std::uint64_t k = 0;
  std::uint64_t ell = 0;
  std::vector<VertexId> q;        // Q_{k,l}
  std::vector<VertexId> q_tilde;  // Q~_{k,l}
};

/// Regions for k = 0..kmax with k the profile radius (annulus) or, when
/// given, an explicit radial index.
std::vector<RegionBand> region_tiling(const CombGraph& comb, std::uint64_t kmax,
                                      std::span<const std::uint32_t> radial_index = {});

struct LatticeCombSpec {
  int dimension = 2;
  ProfileFamily family = ProfileFamily::logarithmic;
  Metric metric = Metric::sup_norm;
};

struct CurvePoint {
  double gamma = 0.0;
  std::uint64_t checkpoint = 0;
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct CollisionCurve {
  std::vector<double> gammas;
  std::vector<std::uint64_t> checkpoints;  // 0, 1, 2, 4, ..., horizon
  std::vector<CurvePoint> points;          // gamma-major
  /// samples[g][trial][c]: cumulative collisions up to checkpoint c.
  std::vector<std::vector<std::vector<double>>> samples;
};

/// Cumulative collision counts on Comb(Z^d, f_gamma) at dyadic checkpoints.
/// Trial i uses seeds (hash(seed, 2i), hash(seed, 2i+1)) for every gamma.
/// Errc::bad_parameter for an empty gamma list.
CollisionCurve collision_curve(const LatticeCombSpec& spec, std::span<const double> gammas, std::uint64_t horizon,
                               std::size_t trials, std::uint64_t seed, unsigned threads = 1);

/// gamma,checkpoint,mean,ciLow,ciHigh,trials,seed
void write_curve_csv(std::ostream& out, const CollisionCurve& curve);

}  // namespace combwalk
