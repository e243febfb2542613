#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "combwalk/base_graph.hpp"
#include "combwalk/comb_graph.hpp"
#include "combwalk/error.hpp"
#include "combwalk/kernels.hpp"
#include "combwalk/resistance.hpp"
#include "oracles.hpp"

using namespace combwalk;

namespace {

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, e);
}

std::vector<VertexId> complement(std::size_t n, std::span<const VertexId> in) {
  std::vector<std::uint8_t> mark(n, 0);
  for (VertexId v : in) mark[v] = 1;
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n; ++v) {
    if (!mark[v]) out.push_back(v);
  }
  return out;
}

std::vector<char> mask(std::size_t n, std::span<const VertexId> in) {
  std::vector<char> m(n, 0);
  for (VertexId v : in) m[v] = 1;
  return m;
}

// Random vertex subset of size in [1, n-1], as a sorted list.
std::vector<VertexId> random_subset(std::size_t n, std::mt19937_64& rng) {
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
  perm.resize(k);
  std::sort(perm.begin(), perm.end());
  return perm;
}

CombGraph log_comb(std::int32_t n, double gamma) {
  return attach_teeth(make_z2_box(n), TeethProfile{ProfileFamily::logarithmic, gamma, Metric::sup_norm, {}});
}

}  // namespace

TEST_CASE("heat kernel at small times") {
  const auto box = make_z2_box(4);
  const VertexId o = box.origin();
  CHECK(heat_kernel_row(box.graph(), o, 0)[o] == doctest::Approx(0.25));
  CHECK(heat_kernel_row(box.graph(), o, 0, Normalization::probability)[o] == 1.0);
  const auto enumerated = oracle::enumerate_paths(box.graph(), o, 2);
  CHECK(enumerated[o] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(heat_kernel_row(box.graph(), o, 2)[o] == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
  const auto p5 = heat_kernel_row(box.graph(), o, 5, Normalization::probability);
  const auto e5 = oracle::enumerate_paths(box.graph(), o, 5);
  for (VertexId v = 0; v < box.vertex_count(); ++v) REQUIRE(p5[v] == doctest::Approx(e5[v]).epsilon(1e-14));

  // Odd times vanish at the start; even returns follow (C(2n,n)/4^n)^2.
  const auto big = make_z2_box(20);
  const auto table = heat_kernel_table(big.graph(), big.origin(), 20, Normalization::probability);
  for (unsigned n = 0; n <= 10; ++n) {
    const double one_d = oracle::binomial(2 * n, n) / std::pow(4.0, n);
    REQUIRE(table.rows[2 * n][big.origin()] == doctest::Approx(one_d * one_d).epsilon(1e-13));
    if (n < 10) REQUIRE(table.rows[2 * n + 1][big.origin()] == 0.0);
  }
}

TEST_CASE("heat kernel symmetry and mass conservation") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 25)(rng);
    const auto g = oracle::random_connected(n, n / 2, rng);
    std::vector<std::vector<double>> rows;
    for (VertexId x = 0; x < n; ++x) rows.push_back(heat_kernel_row(g, x, 9));
    for (VertexId x = 0; x < n; ++x) {
      double mass = 0.0;
      for (VertexId y = 0; y < n; ++y) {
        REQUIRE(std::abs(rows[x][y] - rows[y][x]) <= 1e-15);
        mass += rows[x][y] * static_cast<double>(g.degree(y));
      }
      REQUIRE(std::abs(mass - 1.0) <= 1e-12);
    }
  }
  // Row t+1 is one step of row t.
  const auto comb = log_comb(12, 2.0);
  const auto tab = heat_kernel_table(comb, comb.root(), 10, Normalization::probability);
  for (std::size_t t = 0; t < 10; ++t) {
    std::vector<double> next(comb.vertex_count(), 0.0);
    for (VertexId v = 0; v < comb.vertex_count(); ++v) {
      for (std::size_t i = 0; i < comb.degree(v); ++i) next[comb.neighbor(v, i)] += tab.rows[t][v] / static_cast<double>(comb.degree(v));
    }
    for (VertexId v = 0; v < comb.vertex_count(); ++v) REQUIRE(std::abs(next[v] - tab.rows[t + 1][v]) <= 1e-15);
    REQUIRE(std::abs(std::accumulate(tab.rows[t + 1].begin(), tab.rows[t + 1].end(), 0.0) - 1.0) <= 1e-12);
  }
}

TEST_CASE("comb kernels respect the truncation") {
  const auto comb = log_comb(6, 2.0);
  const auto r = comb.truncation_radius(comb.root());
  CHECK(r == 6);
  CHECK_NOTHROW(heat_kernel_row(comb, comb.root(), r));
  CHECK_THROWS_WITH_AS(heat_kernel_row(comb, comb.root(), r + 1), doctest::Contains("horizon-exceeds-truncation"), Error);
  CHECK_THROWS_AS(heat_kernel_table(comb, comb.root(), r + 1), Error);
  CHECK_THROWS_AS(truncated_green(comb, comb.root(), comb.root(), 0, r + 1), Error);
  CHECK(parse_normalization("deg-normalized") == Normalization::degree_normalized);
  CHECK(parse_normalization("probability") == Normalization::probability);
  CHECK_FALSE(parse_normalization("other"));
}

TEST_CASE("killed green kernel examples") {
  const auto p = path(4);
  const std::vector<VertexId> a{1, 2};
  CHECK(killed_green(p, a, 1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(killed_green(p, a, 0, 1) == 0.0);
  CHECK(killed_green(p, a, 1, 3) == 0.0);
  const std::vector<VertexId> none;
  CHECK(killed_green(p, none, 1, 1) == 0.0);
  const std::vector<VertexId> all{0, 1, 2, 3};
  CHECK_THROWS_WITH_AS(killed_green(p, all, 1, 1), doctest::Contains("divergent"), Error);
}

TEST_CASE("killed green diagonal equals resistance to the complement") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 40)(rng);
    const auto g = oracle::random_connected(n, n / 2, rng);
    const auto a = random_subset(n, rng);
    const VertexId x = a[std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng)];
    const double green = killed_green(g, a, x, x);
    const std::vector<VertexId> xs{x};
    REQUIRE(std::abs(green - effective_resistance(g, xs, complement(n, a))) <= 1e-8);
    REQUIRE(green == doctest::Approx(oracle::killed_green(g, a, x, x)).epsilon(1e-10));
    const VertexId y = a.front();
    REQUIRE(killed_green(g, a, x, y) == doctest::Approx(oracle::killed_green(g, a, x, y)).epsilon(1e-10));
    const auto diag = killed_green_diagonal(g, a);
    for (std::size_t j = 0; j < a.size(); ++j) REQUIRE(diag[j] == doctest::Approx(oracle::killed_green(g, a, a[j], a[j])).epsilon(1e-10));
  }
}

TEST_CASE("killed green kernel matches the series") {
  const auto box = make_z2_box(5);
  const auto a = ball(box.graph(), box.origin(), 3);
  const auto in = mask(box.vertex_count(), a);
  const VertexId x = box.origin();
  const VertexId y = *box.find(Coord{1, 2});
  const auto ev = killed_evolution(box.graph(), x, in, 10000);
  double series = 0.0;
  for (const auto& row : ev.rows) series += row[y];
  series /= static_cast<double>(box.graph().degree(y));
  CHECK(killed_green(box.graph(), a, x, y) == doctest::Approx(series).epsilon(1e-10));
  CHECK(ev.lost.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("truncated green kernel") {
  const auto box = make_z2_box(6);
  const VertexId o = box.origin();
  CHECK(truncated_green(box.graph(), o, o, 0, 0) == doctest::Approx(0.25));
  CHECK_THROWS_WITH_AS(truncated_green(box.graph(), o, o, 3, 2), doctest::Contains("bad-range"), Error);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 20)(rng);
    const auto g = oracle::random_connected(n, n / 3, rng);
    const VertexId x = std::uniform_int_distribution<VertexId>(0, static_cast<VertexId>(n - 1))(rng);
    const std::size_t a = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
    const std::size_t b = a + std::uniform_int_distribution<std::size_t>(0, 10)(rng);
    std::vector<double> sums(n, 0.0);
    for (std::size_t t = a; t <= b; ++t) {
      const auto row = heat_kernel_row(g, x, t);
      for (VertexId y = 0; y < n; ++y) sums[y] += row[y];
    }
    double best = 0.0;
    for (VertexId y = 0; y < n; ++y) {
      const double v = truncated_green(g, x, y, a, b);
      REQUIRE(std::abs(v - sums[y]) <= 1e-12);
      REQUIRE(std::abs(v - truncated_green(g, y, x, a, b)) <= 1e-12);
      if (a == 0) best = std::max(best, truncated_green(g, x, y, 0, b));
    }
    if (a == 0) REQUIRE(truncated_green(g, x, x, 0, b) == doctest::Approx(best).epsilon(1e-14));
  }
}

TEST_CASE("green criterion ratio") {
  // r = 0 with no tooth at the origin: a single-vertex domain.
  const auto flat = attach_teeth(make_z_segment(5), TeethProfile{ProfileFamily::polynomial, 2.0, Metric::graph_distance, {}});
  CHECK(flat.tooth_height(flat.base().origin()) == 0);
  CHECK(green_criterion_ratio(flat, 0).ratio == doctest::Approx(1.0));

  // r = 0 with a tooth of height 3 at the origin: ratio (3 + g0) / g0.
  std::vector<std::uint32_t> h(11, 0);
  h[5] = 3;
  const auto tooth = attach_teeth(make_z_segment(5), h);
  const auto r0 = green_criterion_ratio(tooth, 0);
  CHECK(r0.origin_green == doctest::Approx(0.5));
  CHECK(r0.ratio == doctest::Approx(7.0));
  CHECK(r0.argmax_height == 3);

  CHECK_THROWS_WITH_AS(green_criterion_ratio(flat, 5), doctest::Contains("ball-exceeds-truncation"), Error);
}

TEST_CASE("green criterion ratio matches a direct solve on the comb") {
  for (const auto& comb :
       {attach_teeth(make_z_segment(14), TeethProfile{ProfileFamily::polynomial, 1.5, Metric::graph_distance, {}}),
        log_comb(9, 2.0), attach_teeth(make_gasket(4), TeethProfile{ProfileFamily::polynomial, 0.7, Metric::graph_distance, {}})}) {
    const auto dist = bfs_distances(comb.base().graph(), comb.base().origin());
    for (std::size_t r : {1, 3, 6}) {
      std::vector<VertexId> domain;
      for (VertexId v = 0; v < comb.vertex_count(); ++v) {
        if (dist[comb.base_of(v)] <= r) domain.push_back(v);
      }
      const auto diag = killed_green_diagonal(comb.graph(), domain);
      double g0 = 0.0, best = 0.0;
      for (std::size_t i = 0; i < domain.size(); ++i) {
        best = std::max(best, diag[i]);
        if (domain[i] == comb.root()) g0 = diag[i];
      }
      const auto gr = green_criterion_ratio(comb, r);
      REQUIRE(gr.origin_green == doctest::Approx(g0).epsilon(1e-10));
      REQUIRE(gr.ratio == doctest::Approx(best / g0).epsilon(1e-10));
    }
  }
}

TEST_CASE("green criterion ratio on the polynomial line comb") {
  const auto comb = attach_teeth(make_z_segment(80), TeethProfile{ProfileFamily::polynomial, 2.0, Metric::graph_distance, {}});
  const double frozen[] = {14.432, 30.232, 62.120, 126.06};
  int i = 0;
  for (std::size_t r : {8, 16, 32, 64}) CHECK(green_criterion_ratio(comb, r).ratio == doctest::Approx(frozen[i++]).epsilon(1e-4));
}

TEST_CASE("green criterion ratio on the logarithmic planar comb") {
  const auto comb = log_comb(70, 1.0);
  const double ratio[] = {4.0280352343632737, 3.9135424351367538, 4.7383449417487613, 5.2627148920612807};
  const double g0[] = {0.56435267423999125, 0.66527736879900956, 0.77075933904788707, 0.87862457378130765};
  int i = 0;
  for (std::size_t r : {8, 16, 32, 64}) {
    const auto gr = green_criterion_ratio(comb, r);
    CHECK(gr.ratio == doctest::Approx(ratio[i]).epsilon(1e-9));
    CHECK(gr.origin_green == doctest::Approx(g0[i]).epsilon(1e-9));
    ++i;
  }
}

TEST_CASE("occupation second moment") {
  const auto box = make_z2_box(600);
  CHECK(occupation_second_moment(box, box.origin(), 0) == 1.0);
  CHECK(occupation_second_moment(box, box.origin(), 2) == doctest::Approx(7.0 / 4.0).epsilon(1e-15));
  CHECK_THROWS_WITH_AS(occupation_second_moment(make_z2_box(4), 40, 5), doctest::Contains("horizon-exceeds-truncation"), Error);

  // Against full visit-count enumeration.
  const auto small = make_z2_box(5);
  for (std::size_t t : {3, 5, 6}) {
    std::vector<double> law(t + 2, 0.0);
    oracle::visits_rec(small.graph(), small.origin(), small.origin(), t, 0, 1.0, law);
    double m2 = 0.0;
    for (std::size_t k = 0; k < law.size(); ++k) m2 += static_cast<double>(k * k) * law[k];
    REQUIRE(occupation_second_moment(small.graph(), small.origin(), t) == doctest::Approx(m2).epsilon(1e-13));
  }

  std::vector<double> scaled;
  for (std::size_t t : {64, 128, 256, 512}) {
    scaled.push_back(occupation_second_moment(box, box.origin(), t) / std::pow(std::log(static_cast<double>(t)), 4));
  }
  for (std::size_t i = 1; i < scaled.size(); ++i) {
    CHECK(scaled[i] <= scaled[i - 1]);
    CHECK(scaled[i] / scaled[0] < 1.0);
  }
}

TEST_CASE("segment hitting law") {
  const auto one = segment_hitting_law(1, 1, 10);
  CHECK(one.pmf[1] == 1.0);
  CHECK(one.tail == 0.0);
  const auto two = segment_hitting_law(2, 1, 41);
  for (std::size_t s = 0; s <= 41; ++s) {
    const double expect = s % 2 == 1 ? std::pow(2.0, -static_cast<double>((s - 1) / 2 + 1)) : 0.0;
    REQUIRE(two.pmf[s] == doctest::Approx(expect).epsilon(1e-14));
  }
  CHECK(two.tail == doctest::Approx(std::pow(2.0, -21)).epsilon(1e-12));
  CHECK(segment_hitting_law(7, 0, 5).pmf[0] == 1.0);
  CHECK_THROWS_WITH_AS(segment_hitting_law(3, 4, 5), doctest::Contains("bad-height"), Error);
  for (std::uint64_t m : {3, 10, 25}) {
    for (std::uint64_t h = 0; h <= m; ++h) {
      const auto law = segment_hitting_law(m, h, 20000);
      REQUIRE(*law.mean == static_cast<double>(h * (2 * m - h)));
      double mean = 0.0, mass = law.tail;
      for (std::size_t s = 0; s < law.pmf.size(); ++s) {
        mean += static_cast<double>(s) * law.pmf[s];
        mass += law.pmf[s];
      }
      REQUIRE(mass == doctest::Approx(1.0).epsilon(1e-12));
      REQUIRE(mean == doctest::Approx(*law.mean).epsilon(1e-6));
    }
  }
}

TEST_CASE("commute time on a tooth of height three") {
  const auto p = path(4);
  const std::vector<VertexId> zero{0}, one{1};
  const double up = expected_hitting_times(p, zero)[1];
  const double down = expected_hitting_times(p, one)[0];
  CHECK(up == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(down == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(up + down == doctest::Approx(2.0 * p.edge_count() * effective_resistance(p, zero, one)).epsilon(1e-12));
  CHECK(*segment_hitting_law(3, 1, 1).mean == 5.0);
}

TEST_CASE("interval exit law") {
  const auto law = interval_exit_law(1, 0, 40);
  for (std::size_t s = 1; s <= 40; ++s) REQUIRE(law.low[s] + law.high[s] == doctest::Approx(std::pow(2.0, -static_cast<double>(s))).epsilon(1e-14));
  CHECK(law.low[0] + law.high[0] == 0.0);
  for (std::uint64_t m : {0, 1, 4, 9}) {
    for (std::uint64_t h = 0; h <= m; ++h) {
      const auto a = interval_exit_law(m, h, 4000);
      const auto b = interval_exit_law(m, m - h, 4000);
      REQUIRE(a.total_high() == doctest::Approx(static_cast<double>(h + 1) / static_cast<double>(m + 2)).epsilon(1e-10));
      for (std::size_t s = 0; s < a.low.size(); ++s) {
        REQUIRE(a.low[s] == doctest::Approx(b.high[s]).epsilon(1e-14));
        REQUIRE(a.high[s] == doctest::Approx(b.low[s]).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("return probabilities decrease along even times") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 30)(rng);
    const auto g = oracle::random_connected(n, n / 2, rng);
    for (VertexId x = 0; x < n; ++x) {
      const auto p = return_probabilities(g, x, 40);
      for (std::size_t k = 0; k + 2 <= 40; k += 2) {
        REQUIRE(p[k + 2] <= p[k] + 1e-15);
        REQUIRE(p[k + 1] <= p[k] + 1e-15);
      }
    }
  }
  const auto comb = log_comb(40, 2.0);
  const auto p = return_probabilities(comb.graph(), comb.root(), 40);
  for (std::size_t k = 0; k + 2 <= 40; k += 2) REQUIRE(p[k + 2] <= p[k]);
}

TEST_CASE("heat kernel is bounded through the killed green kernel") {
  std::mt19937_64 rng(21);
  int checked = 0;
  while (checked < 20) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(4, 30)(rng);
    const auto g = oracle::random_connected(n, n / 4, rng);
    const auto b = random_subset(n, rng);
    const VertexId x = b[std::uniform_int_distribution<std::size_t>(0, b.size() - 1)(rng)];
    const std::size_t t = std::uniform_int_distribution<std::size_t>(1, 32)(rng);
    const auto exit = exit_time_law(g, x, mask(n, b), t);
    double survive = exit.tail + exit.pmf[t];  // P(T_B >= t)
    if (survive <= 0.0) continue;
    const double pn = heat_kernel_row(g, x, t)[x];
    const double bound = 2.0 * killed_green(g, b, x, x) / (static_cast<double>(t) * survive);
    REQUIRE(pn <= bound);
    ++checked;
  }
}

TEST_CASE("comb heat kernel is bounded by a quarter of the late green sum") {
  const auto comb = log_comb(50, 2.0);
  for (Coord c : {Coord{0, 0}, Coord{3, 0}, Coord{5, 5}, Coord{10, 2}}) {
    const VertexId x = *comb.base().find(c);
    const auto table = heat_kernel_table(comb, x, 40);
    for (std::size_t t = 2; t <= 40; t += 2) {
      double late = 0.0;
      for (std::size_t s = t / 2; s <= t; ++s) late += table.rows[s][x];
      REQUIRE(table.rows[t][x] <= 4.0 / static_cast<double>(t) * late);
      REQUIRE(late == doctest::Approx(truncated_green(comb, x, x, t / 2, t)).epsilon(1e-13));
    }
  }
}

TEST_CASE("killed bounds bracket the exact kernel") {
  const auto comb = log_comb(30, 2.0);
  const VertexId z = *comb.base().find(Coord{4, 0});
  std::vector<char> inside(comb.vertex_count(), 0);
  for (VertexId v = 0; v < comb.vertex_count(); ++v) inside[v] = comb.base_radius(comb.base_of(v)) <= 20;
  const auto bounds = heat_kernel_diagonal_bounds(comb, z, inside, 26);
  const auto exact = heat_kernel_table(comb, z, 26);
  for (std::size_t t = 0; t <= 26; ++t) {
    REQUIRE(bounds.lower[t] <= exact.rows[t][z] + 1e-15);
    REQUIRE(exact.rows[t][z] <= bounds.upper[t] + 1e-15);
  }
  std::vector<char> bad(comb.vertex_count(), 1);
  CHECK_THROWS_AS(heat_kernel_diagonal_bounds(comb, z, bad, 10), Error);
}

TEST_CASE("comb heat kernel decays like one over t") {
  const auto comb = log_comb(48, 2.0);
  for (Coord c : {Coord{8, 0}, Coord{8, 8}, Coord{16, 0}}) {
    const VertexId z = *comb.base().find(c);
    std::vector<char> inside(comb.vertex_count(), 0);
    for (VertexId v = 0; v < comb.vertex_count(); ++v) {
      const auto b = comb.base().coord(comb.base_of(v));
      inside[v] = std::max(std::abs(b.x - c.x), std::abs(b.y - c.y)) <= 24;
    }
    const auto bd = heat_kernel_diagonal_bounds(comb, z, inside, 1024);
    double worst = 0.0;
    for (std::size_t t = 64; t <= 1024; ++t) worst = std::max(worst, static_cast<double>(t) * bd.upper[t]);
    CHECK(worst <= 12.0);
  }
}

TEST_CASE("expected collisions in a region") {
  const auto comb = log_comb(3, 2.0);
  const std::vector<VertexId> none;
  CHECK(expected_collisions_region(comb, none, 3, comb.root()) == 0.0);

  const std::vector<Edge> e{{0, 1}};
  const auto k2 = Graph::from_edges(2, e);
  const std::vector<VertexId> both{0, 1};
  CHECK(expected_collisions_region(k2, both, 3, 0) == doctest::Approx(4.0));

  const auto g = make_z2_box(5);
  const std::vector<VertexId> all = ball(g.graph(), g.origin(), 10);
  const auto table = heat_kernel_table(g.graph(), g.origin(), 5, Normalization::probability);
  double direct = 0.0;
  for (const auto& row : table.rows) {
    for (double p : row) direct += p * p;
  }
  CHECK(expected_collisions_region(g.graph(), all, 5, g.origin()) == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("expected collisions decay across annuli") {
  const auto comb = log_comb(62, 2.0);
  std::vector<char> inside(comb.vertex_count(), 0);
  for (VertexId v = 0; v < comb.vertex_count(); ++v) inside[v] = comb.base_radius(comb.base_of(v)) <= 61;
  std::vector<CollisionBounds> b;
  for (std::uint64_t k : {8, 16}) {
    std::vector<VertexId> region;
    for (VertexId v = 0; v < comb.vertex_count(); ++v) {
      if (comb.base_radius(comb.base_of(v)) == k) region.push_back(v);
    }
    b.push_back(expected_collisions_region_bounds(comb, region, 4096, comb.root(), inside));
    CHECK(b.back().lower <= b.back().upper);
  }
  CHECK(b[1].upper < b[0].lower);
}

TEST_CASE("kernel csv export") {
  const auto g = make_z_segment(2);
  const auto table = heat_kernel_table(g.graph(), g.origin(), 2, Normalization::probability);
  std::ostringstream out;
  write_kernel_csv(out, table);
  const std::string text = out.str();
  CHECK(text.rfind("t,vertexId,value,normalization\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 3 * 5);
  CHECK(text.find("0,2,1,probability\n") != std::string::npos);
}
