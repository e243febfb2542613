#include "combwalk/collisions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "combwalk/error.hpp"
#include "combwalk/io_format.hpp"
#include "combwalk/parallel.hpp"
#include "combwalk/rng.hpp"
#include "combwalk/stats.hpp"
#include "combwalk/walker.hpp"

namespace combwalk {

std::pair<std::uint64_t, std::uint64_t> middle_third(std::uint64_t ell) { return {(ell + 2) / 3, (2 * ell) / 3}; }

std::uint64_t CollisionRecord::count(std::uint64_t k, std::uint64_t lo, std::uint64_t hi) const {
  std::uint64_t c = 0;
  for (auto it = cells.lower_bound({k, lo}); it != cells.end() && it->first.first == k && it->first.second <= hi;
       ++it) {
    c += it->second;
  }
  return c;
}

std::uint64_t CollisionRecord::z_tilde(std::uint64_t k, std::uint64_t ell) const {
  const auto [lo, hi] = middle_third(ell);
  return lo > hi ? 0 : count(k, lo, hi);
}

namespace {

template <class G, class Radial>
CollisionRecord collide(const G& g, typename G::vertex_type start, std::uint64_t horizon, SeedPair seeds,
                        Radial&& radial) {
  CollisionRecord rec;
  rec.horizon = horizon;
  rec.seeds = seeds;
  Rng rx = stream(seeds.x, 0);
  Rng ry = stream(seeds.y, 0);
  auto x = start;
  auto y = start;
  for (std::uint64_t t = 0;; ++t) {
    if (x == y) {
      rec.times.push_back(t);
      const auto h = static_cast<std::uint64_t>(g.height_of(x));
      if (h == 0) ++rec.skeleton;
      const std::uint64_t k = radial(g.base_of(x));
      if (k == kNoRegion) {
        ++rec.unassigned;
      } else {
        ++rec.cells[{k, h}];
      }
    }
    if (t == horizon) break;
    x = step(g, x, rx);
    y = step(g, y, ry);
  }
  rec.total = rec.times.size();
  return rec;
}

}  // namespace

CollisionRecord run_collision(const CombGraph& comb, VertexId start, std::uint64_t horizon, SeedPair seeds,
                              std::span<const std::uint32_t> radial_index) {
  if (start >= comb.vertex_count()) throw Error(Errc::bad_parameter, "start out of range");
  if (horizon > comb.truncation_radius(start)) {
    throw Error(Errc::horizon_exceeds_truncation, "horizon " + std::to_string(horizon) +
                                                      " exceeds truncation radius " +
                                                      std::to_string(comb.truncation_radius(start)));
  }
  if (!radial_index.empty() && radial_index.size() != comb.base().vertex_count()) {
    throw Error(Errc::bad_parameter, "radial index size does not match base");
  }
  if (radial_index.empty()) {
    return collide(comb, start, horizon, seeds, [&](VertexId b) { return comb.base_radius(b); });
  }
  return collide(comb, start, horizon, seeds, [&](VertexId b) -> std::uint64_t {
    return radial_index[b] == kNoRegion ? kNoRegion : radial_index[b];
  });
}

CollisionRecord run_collision(const LatticeComb& comb, LatticeVertex start, std::uint64_t horizon, SeedPair seeds) {
  return collide(comb, start, horizon, seeds, [&](const LatticeSite& s) { return comb.radius(s); });
}

ExplorationPartition exploration_sets(const BaseGraph& base, VertexId o, double alpha, std::size_t kmax) {
  if (!(alpha >= 1.0 && alpha <= 2.0)) throw Error(Errc::bad_parameter, "alpha must lie in [1, 2]");
  if (o >= base.vertex_count()) throw Error(Errc::bad_parameter, "origin out of range");
  const auto dist = bfs_distances(base.graph(), o);
  std::vector<VertexId> order(base.vertex_count());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    if (base.has_coords() && base.coord(a) != base.coord(b)) return base.coord(a) < base.coord(b);
    return a < b;
  });
  // Unreachable vertices cannot occur in a connected base, but never hand them out.
  while (!order.empty() && dist[order.back()] == kUnreachable) order.pop_back();

  ExplorationPartition p;
  p.alpha = alpha;
  std::size_t next = 0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const auto size = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(k), alpha - 1.0)));
    if (next + size > order.size()) {
      p.truncated = true;
      if (next < order.size()) {
        p.sets.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(next), order.end());
        p.min_distance.push_back(dist[order[next]]);
      }
      break;
    }
    p.sets.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(next),
                        order.begin() + static_cast<std::ptrdiff_t>(next + size));
    p.min_distance.push_back(dist[order[next]]);
    next += size;
  }
  return p;
}

std::vector<std::uint32_t> exploration_index(const ExplorationPartition& p, std::size_t base_vertex_count) {
  std::vector<std::uint32_t> idx(base_vertex_count, kNoRegion);
  for (std::size_t k = 0; k < p.sets.size(); ++k) {
    for (VertexId v : p.sets[k]) idx.at(v) = static_cast<std::uint32_t>(k + 1);
  }
  return idx;
}

std::vector<std::uint64_t> dyadic_bands(std::uint64_t max_height) {
  std::uint64_t j0 = 1;
  while ((std::uint64_t{1} << j0) < max_height) ++j0;
  if (middle_third(std::uint64_t{1} << j0).second < max_height) ++j0;
  std::vector<std::uint64_t> out;
  for (std::uint64_t j = 1; j <= j0; ++j) out.push_back(std::uint64_t{1} << j);
  return out;
}

std::vector<RegionBand> region_tiling(const CombGraph& comb, std::uint64_t kmax,
                                      std::span<const std::uint32_t> radial_index) {
  const std::size_t nb = comb.base().vertex_count();
  if (!radial_index.empty() && radial_index.size() != nb) {
    throw Error(Errc::bad_parameter, "radial index size does not match base");
  }
  auto radial = [&](VertexId b) -> std::uint64_t {
    if (radial_index.empty()) return comb.base_radius(b);
    return radial_index[b] == kNoRegion ? kNoRegion : radial_index[b];
  };
  std::vector<std::vector<VertexId>> at(kmax + 1);
  for (VertexId b = 0; b < nb; ++b) {
    const auto k = radial(b);
    if (k <= kmax) at[k].push_back(b);
  }
  std::vector<RegionBand> out;
  for (std::uint64_t k = 0; k <= kmax; ++k) {
    std::uint64_t top = 0;
    for (VertexId b : at[k]) top = std::max<std::uint64_t>(top, comb.tooth_height(b));
    for (std::uint64_t ell : dyadic_bands(top)) {
      RegionBand band;
      band.k = k;
      band.ell = ell;
      const auto [lo, hi] = middle_third(ell);
      for (VertexId b : at[k]) {
        const std::uint64_t f = comb.tooth_height(b);
        for (std::uint64_t h = 0; h <= std::min(f, ell); ++h) {
          const VertexId v = comb.vertex(b, static_cast<std::uint32_t>(h));
          band.q.push_back(v);
          if (h >= lo && h <= hi) band.q_tilde.push_back(v);
        }
      }
      out.push_back(std::move(band));
    }
  }
  return out;
}

CollisionCurve collision_curve(const LatticeCombSpec& spec, std::span<const double> gammas, std::uint64_t horizon,
                               std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (gammas.empty()) throw Error(Errc::bad_parameter, "gamma list is empty");
  if (trials == 0) throw Error(Errc::bad_parameter, "trials must be positive");
  CollisionCurve curve;
  curve.gammas.assign(gammas.begin(), gammas.end());
  curve.checkpoints.push_back(0);
  for (std::uint64_t c = 1; c < horizon; c *= 2) curve.checkpoints.push_back(c);
  if (horizon > 0) curve.checkpoints.push_back(horizon);
  const std::size_t nc = curve.checkpoints.size();

  for (double gamma : gammas) {
    const LatticeComb comb(spec.dimension, spec.family, gamma, spec.metric);
    std::vector<std::vector<double>> per_trial(trials, std::vector<double>(nc, 0.0));
    parallel_for(trials, threads, [&](std::size_t i) {
      Rng rx(hash_pair(seed, 2 * i));
      Rng ry(hash_pair(seed, 2 * i + 1));
      LatticeVertex x = comb.root(), y = comb.root();
      std::uint64_t count = 0;
      std::size_t c = 0;
      for (std::uint64_t t = 0;; ++t) {
        if (x == y) ++count;
        while (c < nc && curve.checkpoints[c] == t) per_trial[i][c++] = static_cast<double>(count);
        if (t == horizon) break;
        x = step(comb, x, rx);
        y = step(comb, y, ry);
      }
    });
    for (std::size_t c = 0; c < nc; ++c) {
      std::vector<double> col(trials);
      for (std::size_t i = 0; i < trials; ++i) col[i] = per_trial[i][c];
      const auto s = stats::summarize(col);
      curve.points.push_back({gamma, curve.checkpoints[c], s.mean, s.mean - s.ci95, s.mean + s.ci95, trials, seed});
    }
    curve.samples.push_back(std::move(per_trial));
  }
  return curve;
}

void write_curve_csv(std::ostream& out, const CollisionCurve& curve) {
  out << "gamma,checkpoint,mean,ciLow,ciHigh,trials,seed\n";
  for (const auto& p : curve.points) {
    out << format_double(p.gamma) << ',' << p.checkpoint << ',' << format_double(p.mean) << ','
        << format_double(p.ci_low) << ',' << format_double(p.ci_high) << ',' << p.trials << ',' << p.seed << '\n';
  }
}

}  // namespace combwalk
