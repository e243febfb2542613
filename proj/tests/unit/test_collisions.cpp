#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "combwalk/base_graph.hpp"
#include "combwalk/collisions.hpp"
#include "combwalk/comb_graph.hpp"
#include "combwalk/kernels.hpp"
#include "combwalk/rng.hpp"
#include "combwalk/stats.hpp"
#include "combwalk/walker.hpp"

using namespace combwalk;

namespace {

CombGraph k2_comb() {
  const std::vector<Edge> e{{0, 1}};
  BaseGraph base(BaseKind::z_segment, Graph::from_edges(2, e), {Coord{0, 0}, Coord{1, 0}}, {}, 0);
  return attach_teeth(std::move(base), std::vector<std::uint32_t>{0, 0});
}

CombGraph log_comb(std::int32_t n, double gamma) {
  return attach_teeth(make_z2_box(n), TeethProfile{ProfileFamily::logarithmic, gamma, Metric::sup_norm, {}});
}

}  // namespace

TEST_CASE("forced collisions on a single edge") {
  const auto comb = k2_comb();
  const auto rec = run_collision(comb, 0, 17, SeedPair{1, 2});
  CHECK(rec.total == 18);
  CHECK(rec.times.size() == 18);
  CHECK(rec.skeleton == 18);
  const auto zero = run_collision(comb, 1, 0, SeedPair{5, 6});
  CHECK(zero.total == 1);
  CHECK(zero.times == std::vector<std::uint64_t>{0});
}

TEST_CASE("collision times are exactly the meeting times") {
  const auto comb = log_comb(20, 2.0);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const SeedPair seeds{hash_pair(s, 0), hash_pair(s, 1)};
    const auto rec = run_collision(comb, comb.root(), 20, seeds);
    auto rx = stream(seeds.x, 0);
    auto ry = stream(seeds.y, 0);
    WalkOptions opt;
    opt.record_path = true;
    const auto px = simulate_walk(comb, comb.root(), StopRule<VertexId>::at_horizon(20), rx, opt).path;
    const auto py = simulate_walk(comb, comb.root(), StopRule<VertexId>::at_horizon(20), ry, opt).path;
    std::vector<std::uint64_t> expect;
    for (std::uint64_t t = 0; t <= 20; ++t) {
      if (px[t] == py[t]) expect.push_back(t);
    }
    REQUIRE(rec.times == expect);
    REQUIRE(rec.total == expect.size());
    REQUIRE(rec.seeds.x == seeds.x);
  }
  CHECK_THROWS_WITH_AS(run_collision(comb, comb.root(), 21, SeedPair{1, 2}), doctest::Contains("horizon-exceeds-truncation"), Error);
}

TEST_CASE("swapping the walks and summing regions") {
  const auto comb = log_comb(30, 2.0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = run_collision(comb, comb.root(), 30, SeedPair{s, s + 100});
    const auto b = run_collision(comb, comb.root(), 30, SeedPair{s + 100, s});
    REQUIRE(a.total == b.total);
    REQUIRE(a.times == b.times);
    std::uint64_t cells = 0, skeleton = 0;
    for (const auto& [key, n] : a.cells) {
      cells += n;
      if (key.second == 0) skeleton += n;
    }
    REQUIRE(cells + a.unassigned == a.total);
    REQUIRE(a.unassigned == 0);
    REQUIRE(skeleton == a.skeleton);
    // Dyadic bands of each annulus cover heights 0..top exactly once
    // when taken as [0,2], [3,4], [5,8], ...
    std::uint64_t banded = 0;
    for (std::uint64_t k = 0; k <= 30; ++k) {
      std::uint64_t lo = 0;
      for (std::uint64_t ell : dyadic_bands(eval_profile(comb.profile(), k))) {
        banded += a.count(k, lo, ell);
        lo = ell + 1;
      }
    }
    REQUIRE(banded == a.total);
  }
}

TEST_CASE("mean collision count matches the exact expectation") {
  const auto comb = attach_teeth(make_z_segment(30), TeethProfile{ProfileFamily::polynomial, 0.5, Metric::graph_distance, {}});
  REQUIRE(comb.vertex_count() <= 300);
  std::vector<VertexId> all(comb.vertex_count());
  for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
  const double exact = expected_collisions_region(comb, all, 30, comb.root());
  std::vector<double> totals;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    totals.push_back(static_cast<double>(run_collision(comb, comb.root(), 30, SeedPair{hash_pair(8, 2 * i), hash_pair(8, 2 * i + 1)}).total));
  }
  const auto s = stats::summarize(totals);
  CHECK(std::abs(s.mean - exact) <= 3.0 * s.std_error);
}

TEST_CASE("exploration sets") {
  const auto box = make_z2_box(12);
  const auto two = exploration_sets(box, box.origin(), 2.0, 20);
  CHECK_FALSE(two.truncated);
  REQUIRE(two.sets.size() == 20);
  std::set<VertexId> seen;
  for (std::size_t k = 1; k <= 20; ++k) {
    REQUIRE(two.sets[k - 1].size() == k);
    for (VertexId v : two.sets[k - 1]) REQUIRE(seen.insert(v).second);
  }

  // alpha = 1: one vertex per set, in BFS order with coordinate ties.
  const auto one = exploration_sets(box, box.origin(), 1.0, 30);
  const auto dist = bfs_distances(box.graph(), box.origin());
  for (std::size_t k = 1; k < one.sets.size(); ++k) {
    REQUIRE(one.sets[k].size() == 1);
    const VertexId a = one.sets[k - 1][0], b = one.sets[k][0];
    REQUIRE((dist[a] < dist[b] || (dist[a] == dist[b] && box.coord(a) < box.coord(b))));
    REQUIRE(one.min_distance[k] == dist[b]);
  }
  CHECK(one.sets[0][0] == box.origin());
  CHECK(one.sets[1][0] == *box.find(Coord{-1, 0}));

  const auto idx = exploration_index(two, box.vertex_count());
  CHECK(idx[box.origin()] == 1);
  CHECK(std::count(idx.begin(), idx.end(), kNoRegion) == static_cast<std::ptrdiff_t>(box.vertex_count() - 210));

  const auto small = exploration_sets(make_z2_box(1), 4, 2.0, 10);
  CHECK(small.truncated);
  CHECK(small.sets.back().size() == 3);
  CHECK_THROWS_WITH_AS(exploration_sets(box, box.origin(), 2.5, 3), doctest::Contains("bad-parameter"), Error);
}

TEST_CASE("exploration sets move away from the gasket corner") {
  const auto g = make_gasket(7);
  const double alpha = std::log(3.0) / std::log(2.0);
  const auto p = exploration_sets(g, g.origin(), alpha, 128);
  REQUIRE_FALSE(p.truncated);
  for (std::size_t k = 1; k <= 128; ++k) {
    REQUIRE(p.sets[k - 1].size() == static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(k), alpha - 1.0))));
  }
  std::vector<double> ks, ds;
  for (std::size_t k = 32; k <= 128; ++k) {
    REQUIRE(p.min_distance[k - 1] >= p.min_distance[k - 2]);
    REQUIRE(static_cast<double>(p.min_distance[k - 1]) >= 0.5 * static_cast<double>(k));
    ks.push_back(static_cast<double>(k));
    ds.push_back(static_cast<double>(p.min_distance[k - 1]));
  }
  CHECK(stats::loglog_fit(ks, ds).slope >= 0.9);
}

// d(o, A_k) is about 0.6 k here; k^0.9 stays below it only from k ~ 165 on.
TEST_CASE("gasket exploration distance exceeds k^0.9 on [32, 128]" * doctest::should_fail()) {
  const auto g = make_gasket(7);
  const auto p = exploration_sets(g, g.origin(), std::log(3.0) / std::log(2.0), 128);
  for (std::size_t k = 32; k <= 128; ++k) {
    CHECK(static_cast<double>(p.min_distance[k - 1]) >= std::pow(static_cast<double>(k), 0.9));
  }
}

TEST_CASE("dyadic bands and middle thirds") {
  CHECK(dyadic_bands(0) == std::vector<std::uint64_t>{2});
  CHECK(dyadic_bands(21) == std::vector<std::uint64_t>{2, 4, 8, 16, 32});
  CHECK(eval_profile(ProfileFamily::logarithmic, 2.0, 100) == 21);
  CHECK(middle_third(2) == std::pair<std::uint64_t, std::uint64_t>{1, 1});
  CHECK(middle_third(8) == std::pair<std::uint64_t, std::uint64_t>{3, 5});
  for (std::uint64_t m = 0; m <= 300; ++m) {
    // Every height 1..m lies in some middle third.
    const auto bands = dyadic_bands(m);
    for (std::uint64_t h = 1; h <= m; ++h) {
      REQUIRE(std::any_of(bands.begin(), bands.end(), [&](std::uint64_t l) {
        const auto [lo, hi] = middle_third(l);
        return lo <= h && h <= hi;
      }));
    }
  }
}

TEST_CASE("region tiling") {
  const auto flat = attach_teeth(make_z2_box(4), std::vector<std::uint32_t>(81, 0));
  const auto bands = region_tiling(flat, 4);
  for (const auto& b : bands) {
    REQUIRE(b.ell == 2);
    REQUIRE(b.q_tilde.empty());
  }

  const auto comb = log_comb(101, 2.0);
  const auto tiles = region_tiling(comb, 100);
  CHECK(std::count_if(tiles.begin(), tiles.end(), [](const RegionBand& b) { return b.k == 100; }) == 5);

  const auto mid = log_comb(20, 2.0);
  const auto t = region_tiling(mid, 20);
  std::vector<int> covered(mid.vertex_count(), 0);
  std::vector<int> in_q(mid.vertex_count(), 0);
  for (const auto& b : t) {
    for (VertexId v : b.q_tilde) {
      ++covered[v];
      REQUIRE(mid.base_radius(mid.base_of(v)) == b.k);
      const auto [lo, hi] = middle_third(b.ell);
      REQUIRE((mid.height_of(v) >= lo && mid.height_of(v) <= hi));
    }
    for (VertexId v : b.q) {
      REQUIRE(mid.height_of(v) <= b.ell);
      in_q[v] = 1;
    }
  }
  for (VertexId v = 0; v < mid.vertex_count(); ++v) {
    REQUIRE(in_q[v] == 1);
    if (mid.height_of(v) > 0) REQUIRE(covered[v] >= 1);
  }
}

TEST_CASE("collision curves") {
  const LatticeCombSpec plane{2, ProfileFamily::logarithmic, Metric::sup_norm};
  const std::vector<double> g{1.0};
  const auto a = collision_curve(plane, g, 1024, 1, 5);
  const auto b = collision_curve(plane, g, 1024, 1, 5);
  CHECK(a.samples == b.samples);
  CHECK(a.checkpoints == std::vector<std::uint64_t>{0, 1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024});
  CHECK(a.samples[0][0][0] == 1.0);
  const auto threaded = collision_curve(plane, g, 1024, 6, 5, 3);
  const auto serial = collision_curve(plane, g, 1024, 6, 5, 1);
  CHECK(threaded.samples == serial.samples);
  const std::vector<double> none;
  CHECK_THROWS_WITH_AS(collision_curve(plane, none, 16, 1, 1), doctest::Contains("bad-parameter"), Error);

  std::ostringstream out;
  write_curve_csv(out, a);
  CHECK(out.str().rfind("gamma,checkpoint,mean,ciLow,ciHigh,trials,seed\n", 0) == 0);
}

TEST_CASE("line comb collisions keep growing only for thin teeth") {
  const LatticeCombSpec line{1, ProfileFamily::polynomial, Metric::graph_distance};
  const std::vector<double> g{0.5, 3.0};
  const auto c = collision_curve(line, g, 65536, 100, 2024);
  const std::size_t last = c.checkpoints.size() - 1;
  REQUIRE(c.checkpoints[last] == 65536);
  REQUIRE(c.checkpoints[last - 2] == 16384);
  std::vector<double> thin, thick;
  for (std::size_t i = 0; i < 100; ++i) {
    thin.push_back(c.samples[0][i][last] - c.samples[0][i][last - 2]);
    thick.push_back(c.samples[1][i][last] - c.samples[1][i][last - 2]);
  }
  const auto st = stats::summarize(thin);
  const auto sk = stats::summarize(thick);
  CHECK(st.mean - st.ci95 > 0.0);
  CHECK(sk.mean - sk.ci95 <= 0.0);
}
