#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

#include "combwalk/base_graph.hpp"
#include "combwalk/comb_graph.hpp"
#include "combwalk/error.hpp"
#include "combwalk/resistance.hpp"
#include "combwalk/stats.hpp"
#include "oracles.hpp"

using namespace combwalk;

namespace {

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, e);
}

Graph triangle() {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}};
  return Graph::from_edges(3, e);
}

std::vector<VertexId> complement(std::size_t n, const std::vector<VertexId>& in) {
  std::vector<std::uint8_t> mark(n, 0);
  for (VertexId v : in) mark[v] = 1;
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n; ++v) {
    if (!mark[v]) out.push_back(v);
  }
  return out;
}

// Comb vertices whose base vertex lies outside the base ball.
std::vector<VertexId> outside_domain(const CombGraph& comb, const std::vector<std::size_t>& dist, std::size_t r) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < comb.vertex_count(); ++v) {
    if (dist[comb.base_of(v)] > r) out.push_back(v);
  }
  return out;
}

std::vector<VertexId> outside_ball(const std::vector<std::size_t>& dist, std::size_t r) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < dist.size(); ++v) {
    if (dist[v] > r) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("harmonic potential examples") {
  const auto p = path(3);
  const std::vector<VertexId> a{0}, b{2};
  const auto h = harmonic_potential(p, a, b);
  CHECK(h.values[0] == 1.0);
  CHECK(h.values[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(h.values[2] == 0.0);
  CHECK(h.max_residual <= 1e-9);
  CHECK(h.solver == SolverKind::direct);

  const auto t = triangle();
  const std::vector<VertexId> b1{1};
  CHECK(harmonic_potential(t, a, b1).values[2] == doctest::Approx(0.5).epsilon(1e-14));

  // Every vertex on the boundary: indicator of A, no solve.
  const std::vector<VertexId> b12{1, 2};
  const auto all = harmonic_potential(t, a, b12);
  CHECK(all.values == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(all.solver == SolverKind::none);
  CHECK(effective_resistance(t, a, b12) == doctest::Approx(0.5));
}

TEST_CASE("harmonic potential errors") {
  const auto p = path(3);
  const std::vector<VertexId> a{0, 1}, b{1, 2}, none;
  CHECK_THROWS_WITH_AS(harmonic_potential(p, a, b), doctest::Contains("overlapping-boundary"), Error);
  CHECK_THROWS_WITH_AS(harmonic_potential(p, none, b), doctest::Contains("bad-parameter"), Error);
  const std::vector<Edge> split{{0, 1}, {2, 3}};
  const auto g = Graph::from_edges(4, split);
  const std::vector<VertexId> s{0}, t{1};
  CHECK_THROWS_WITH_AS(harmonic_potential(g, s, t), doctest::Contains("disconnected"), Error);
}

TEST_CASE("dirichlet energy examples") {
  const std::vector<double> f{1.0, 0.5, 0.0};
  CHECK(dirichlet_energy(path(3), f) == doctest::Approx(0.5).epsilon(1e-14));
  const std::vector<double> c(3, 4.2);
  CHECK(dirichlet_energy(triangle(), c) == 0.0);
  const std::vector<double> ind{1.0, 0.0, 0.0};
  // Each of the two unit edges counts once per orientation.
  CHECK(dirichlet_energy(triangle(), ind) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("effective resistance examples") {
  const std::vector<VertexId> a{0}, b{2}, b1{1};
  CHECK(effective_resistance(path(3), a, b) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(effective_resistance(triangle(), a, b1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // Gasket L=1 corner to corner, against dense elimination.
  const auto g1 = make_gasket(1);
  const auto corners = gasket_corners(g1);
  const std::vector<VertexId> c0{corners[0]}, c1{corners[1]};
  const double dense = oracle::resistance(g1.graph(), c0, c1);
  CHECK(effective_resistance(g1.graph(), c0, c1) == doctest::Approx(dense).epsilon(1e-12));
  CHECK(dense == doctest::Approx(10.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("effective resistance matches dense elimination") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 40)(rng);
    const auto g = oracle::random_connected(n, n / 2, rng);
    std::vector<VertexId> perm(n);
    for (VertexId v = 0; v < n; ++v) perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t na = std::uniform_int_distribution<std::size_t>(1, n / 3)(rng);
    const std::size_t nb = std::uniform_int_distribution<std::size_t>(1, n / 3)(rng);
    std::vector<VertexId> a(perm.begin(), perm.begin() + na);
    std::vector<VertexId> b(perm.begin() + na, perm.begin() + na + nb);
    const double r = effective_resistance(g, a, b);
    REQUIRE(r == doctest::Approx(oracle::resistance(g, a, b)).epsilon(1e-10));
    REQUIRE(std::abs(r - effective_resistance(g, b, a)) <= 1e-10);
    const auto h = harmonic_potential(g, a, b);
    REQUIRE(h.max_residual <= 1e-9);
  }
}

TEST_CASE("thompson bound examples") {
  const auto p = path(3);
  const std::vector<VertexId> a{0}, b{2}, b1{1};
  const std::vector<std::tuple<VertexId, VertexId, double>> along{{0, 1, 1.0}, {1, 2, 1.0}};
  CHECK(thompson_bound(p, flow_from_edges(p, a, b, along)) == doctest::Approx(2.0).epsilon(1e-14));

  const auto t = triangle();
  const std::vector<std::tuple<VertexId, VertexId, double>> split{{0, 1, 2.0 / 3.0}, {0, 2, 1.0 / 3.0}, {2, 1, 1.0 / 3.0}};
  CHECK(thompson_bound(t, flow_from_edges(t, a, b1, split)) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  const std::vector<std::tuple<VertexId, VertexId, double>> direct{{0, 1, 1.0}};
  CHECK(thompson_bound(t, flow_from_edges(t, a, b1, direct)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("thompson bound rejects invalid flows") {
  const auto p = path(3);
  const std::vector<VertexId> a{0}, b{2};
  const std::vector<std::tuple<VertexId, VertexId, double>> leaky{{0, 1, 1.0}, {1, 2, 0.5}};
  CHECK_THROWS_WITH_AS(thompson_bound(p, flow_from_edges(p, a, b, leaky)), doctest::Contains("vertex 1"), Error);
  const std::vector<std::tuple<VertexId, VertexId, double>> half{{0, 1, 0.5}, {1, 2, 0.5}};
  CHECK_THROWS_WITH_AS(thompson_bound(p, flow_from_edges(p, a, b, half)), doctest::Contains("invalid-flow"), Error);
  auto f = flow_from_edges(p, a, b, std::vector<std::tuple<VertexId, VertexId, double>>{{0, 1, 1.0}, {1, 2, 1.0}});
  f.current[p.slot(0, 0)] = 0.7;
  CHECK_THROWS_WITH_AS(thompson_bound(p, f), doctest::Contains("invalid-flow"), Error);
  const std::vector<std::tuple<VertexId, VertexId, double>> nonedge{{0, 2, 1.0}};
  CHECK_THROWS_AS(flow_from_edges(p, a, b, nonedge), Error);
}

TEST_CASE("potential flow attains the resistance and other flows bound it") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(4, 40)(rng);
    const auto g = oracle::random_connected(n, n, rng);
    const std::vector<VertexId> a{0};
    const std::vector<VertexId> b{static_cast<VertexId>(n - 1)};
    const auto h = harmonic_potential(g, a, b);
    const double r = effective_resistance(g, a, b);
    auto flow = potential_flow(g, h);
    REQUIRE(std::abs(thompson_bound(g, flow) - r) <= 1e-8);

    // Shortest-path flow from 0 to n-1 is valid; so is any convex mix.
    const auto dist = bfs_distances(g, 0);
    std::vector<std::tuple<VertexId, VertexId, double>> tree;
    std::vector<VertexId> route{b[0]};
    while (route.back() != 0) {
      const VertexId x = route.back();
      for (VertexId y : g.neighbors(x)) {
        if (dist[y] + 1 == dist[x]) {
          route.push_back(y);
          break;
        }
      }
    }
    for (std::size_t k = route.size() - 1; k > 0; --k) tree.emplace_back(route[k], route[k - 1], 1.0);
    const auto shortest = flow_from_edges(g, a, b, tree);
    const double e_short = thompson_bound(g, shortest);
    REQUIRE(e_short >= r - 1e-12);
    Flow mix = flow;
    for (std::size_t s = 0; s < mix.current.size(); ++s) mix.current[s] = 0.5 * (flow.current[s] + shortest.current[s]);
    REQUIRE(thompson_bound(g, mix) >= r - 1e-12);
  }
}

TEST_CASE("resistance is monotone in the source set") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(6, 40)(rng);
    const auto g = oracle::random_connected(n, n / 3, rng);
    const std::vector<VertexId> b{static_cast<VertexId>(n - 1)};
    std::vector<VertexId> a{0};
    double prev = effective_resistance(g, a, b);
    for (VertexId v = 1; v + 1 < n && v < 6; ++v) {
      a.push_back(v);
      const double r = effective_resistance(g, a, b);
      REQUIRE(r <= prev + 1e-12);
      prev = r;
    }
  }
}

TEST_CASE("comb and base resistances to the domain complement agree") {
  for (const auto& comb : {attach_teeth(make_gasket(4), TeethProfile{ProfileFamily::polynomial, 1.0, Metric::graph_distance, {}}),
                           attach_teeth(make_z2_box(10), TeethProfile{ProfileFamily::logarithmic, 2.0, Metric::sup_norm, {}})}) {
    const auto dist = bfs_distances(comb.base().graph(), comb.base().origin());
    for (std::size_t r : {2, 4, 8}) {
      const std::vector<VertexId> o{comb.root()};
      const std::vector<VertexId> ob{comb.base().origin()};
      const double on_comb = effective_resistance(comb.graph(), o, outside_domain(comb, dist, r));
      const double on_base = effective_resistance(comb.base().graph(), ob, outside_ball(dist, r));
      CHECK(std::abs(on_comb - on_base) <= 1e-8);
    }
  }
}

TEST_CASE("resistance from a tooth point is at most height plus base resistance") {
  const auto comb = attach_teeth(make_z2_box(8), TeethProfile{ProfileFamily::polynomial, 1.0, Metric::sup_norm, {}});
  const auto dist = bfs_distances(comb.base().graph(), comb.base().origin());
  const std::size_t r = 5;
  const auto out_comb = outside_domain(comb, dist, r);
  const auto out_base = outside_ball(dist, r);
  for (VertexId b = 0; b < comb.base().vertex_count(); ++b) {
    if (dist[b] > 4) continue;
    const std::vector<VertexId> xb{b};
    const double base_r = effective_resistance(comb.base().graph(), xb, out_base);
    for (std::uint32_t h = 0; h <= comb.tooth_height(b); ++h) {
      const std::vector<VertexId> x{comb.vertex(b, h)};
      const double rc = effective_resistance(comb.graph(), x, out_comb);
      REQUIRE(rc <= h + base_r + 1e-8);
      // Dangling tooth: the bound is an equality.
      REQUIRE(std::abs(rc - (h + base_r)) <= 1e-8);
    }
  }
}

TEST_CASE("gasket corner resistance") {
  for (std::uint32_t level = 0; level <= 5; ++level) {
    const auto g = make_gasket(level);
    const auto c = gasket_corners(g);
    const std::vector<VertexId> a{c[0]}, b{c[1]};
    CHECK(effective_resistance(g.graph(), a, b) == doctest::Approx(2.0 / 3.0 * std::pow(5.0 / 3.0, level)).epsilon(1e-10));
  }
}

TEST_CASE("gasket resistance growth exponent") {
  const auto g = make_gasket(7);
  const auto dist = bfs_distances(g.graph(), g.origin());
  const std::vector<VertexId> o{g.origin()};
  std::vector<double> ks, rs;
  for (std::size_t k = 4; k <= 32; k *= 2) {
    ks.push_back(static_cast<double>(k));
    rs.push_back(effective_resistance(g.graph(), o, outside_ball(dist, k)));
  }
  const double slope = stats::loglog_fit(ks, rs).slope;
  CHECK(std::abs(slope - std::log(5.0 / 3.0) / std::log(2.0)) <= 0.15);
}

TEST_CASE("conjugate gradient agrees with the direct solver") {
  const auto comb = attach_teeth(make_z2_box(12), TeethProfile{ProfileFamily::polynomial, 0.5, Metric::sup_norm, {}});
  const std::vector<VertexId> o{comb.root()};
  const auto out = complement(comb.vertex_count(), ball(comb.graph(), comb.root(), 9));
  SolverOptions cg;
  cg.direct_limit = 0;
  const auto hd = harmonic_potential(comb.graph(), o, out);
  const auto hc = harmonic_potential(comb.graph(), o, out, cg);
  CHECK(hd.solver == SolverKind::direct);
  CHECK(hc.solver == SolverKind::conjugate_gradient);
  CHECK(hc.max_residual <= 1e-9);
  CHECK(effective_resistance(comb.graph(), o, out, cg) ==
        doctest::Approx(effective_resistance(comb.graph(), o, out)).epsilon(1e-8));
  CHECK(to_string(SolverKind::conjugate_gradient) == "conjugate-gradient");
}
