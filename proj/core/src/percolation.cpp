#include "combwalk/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "combwalk/error.hpp"
#include "combwalk/io_format.hpp"
#include "combwalk/rng.hpp"
#include "combwalk/union_find.hpp"

namespace combwalk {

std::size_t bond_count(std::int32_t half_width) noexcept {
  const auto w = static_cast<std::size_t>(2 * half_width + 1);
  return 2 * w * (w - 1);
}

Edge bond_endpoints(std::int32_t half_width, std::size_t bond) {
  const auto w = static_cast<std::size_t>(2 * half_width + 1);
  const std::size_t horizontal = w * (w - 1);
  if (bond < horizontal) {
    const std::size_t row = bond / (w - 1), col = bond % (w - 1);
    const auto u = static_cast<VertexId>(row * w + col);
    return {u, u + 1};
  }
  const std::size_t rest = bond - horizontal;
  const std::size_t row = rest / w, col = rest % w;
  const auto u = static_cast<VertexId>(row * w + col);
  return {u, static_cast<VertexId>(u + w)};
}

namespace {

void check_parameters(std::int32_t half_width, double p) {
  if (half_width < 1) throw Error(Errc::bad_parameter, "box half-width must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::bad_parameter, "p must lie in [0,1]");
}

void label_clusters(PercolationSample& s) {
  const std::size_t n = s.vertex_count();
  UnionFind uf(n);
  for (std::size_t e = 0; e < s.open.size(); ++e) {
    if (s.open[e]) {
      const auto [u, v] = bond_endpoints(s.half_width, e);
      uf.unite(u, v);
    }
  }
  // Roots visited in increasing vertex order give each cluster its
  // smallest vertex as first occurrence.
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> provisional(n, kNone);
  std::vector<std::uint32_t> first_vertex, size;
  std::vector<std::uint32_t> root_label(n, kNone);
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto r = uf.find(v);
    if (root_label[r] == kNone) {
      root_label[r] = static_cast<std::uint32_t>(first_vertex.size());
      first_vertex.push_back(v);
      size.push_back(0);
    }
    provisional[v] = root_label[r];
    ++size[provisional[v]];
  }
  std::vector<std::uint32_t> order(first_vertex.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return size[a] != size[b] ? size[a] > size[b] : first_vertex[a] < first_vertex[b];
  });
  std::vector<std::uint32_t> final_label(order.size());
  s.cluster_sizes.resize(order.size());
  for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
    final_label[order[rank]] = rank;
    s.cluster_sizes[rank] = size[order[rank]];
  }
  s.cluster_of.resize(n);
  for (std::size_t v = 0; v < n; ++v) s.cluster_of[v] = final_label[provisional[v]];
}

}  // namespace

PercolationSample make_sample(std::int32_t half_width, double p, std::uint64_t seed,
                              std::vector<std::uint8_t> open) {
  check_parameters(half_width, p);
  PercolationSample s;
  s.half_width = half_width;
  s.p = p;
  s.seed = seed;
  if (open.size() != s.bond_count()) throw Error(Errc::bad_parameter, "bond bitmap has wrong length");
  s.open = std::move(open);
  label_clusters(s);
  return s;
}

PercolationSample sample_bonds(std::int32_t half_width, double p, std::uint64_t seed) {
  check_parameters(half_width, p);
  std::vector<std::uint8_t> open(bond_count(half_width));
  for (std::size_t e = 0; e < open.size(); ++e) open[e] = counter_uniform(seed, e) < p ? 1 : 0;
  return make_sample(half_width, p, seed, std::move(open));
}

ClusterSummary clusters(const PercolationSample& s) {
  ClusterSummary out;
  out.cluster_count = s.cluster_sizes.size();
  out.sizes = s.cluster_sizes;
  out.largest_size = s.cluster_sizes.empty() ? 0 : s.cluster_sizes.front();
  out.origin_label = s.cluster_of[s.origin()];
  out.origin_size = s.cluster_sizes[out.origin_label];
  out.open_bonds = static_cast<std::size_t>(std::count(s.open.begin(), s.open.end(), 1));
  return out;
}

namespace {

BaseGraph cluster_graph(const PercolationSample& s, std::uint32_t label, std::vector<VertexId>* box_vertex) {
  if (label >= s.cluster_sizes.size() || s.cluster_sizes[label] == 0) {
    throw Error(Errc::empty_base, "cluster " + std::to_string(label) + " is empty");
  }
  constexpr auto kNone = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> local(s.vertex_count(), kNone);
  std::vector<VertexId> members;
  for (VertexId v = 0; v < s.vertex_count(); ++v) {
    if (s.cluster_of[v] == label) {
      local[v] = static_cast<VertexId>(members.size());
      members.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < s.open.size(); ++e) {
    if (!s.open[e]) continue;
    const auto [u, v] = bond_endpoints(s.half_width, e);
    if (local[u] != kNone) edges.emplace_back(local[u], local[v]);
  }
  const auto w = static_cast<std::int32_t>(s.width());
  std::vector<Coord> coords(members.size());
  std::vector<VertexId> boundary;
  VertexId origin = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto v = static_cast<std::int32_t>(members[i]);
    coords[i] = {v % w - s.half_width, v / w - s.half_width};
    if (std::max(std::abs(coords[i].x), std::abs(coords[i].y)) == s.half_width) {
      boundary.push_back(static_cast<VertexId>(i));
    }
    if (members[i] == s.origin()) origin = static_cast<VertexId>(i);
  }
  if (box_vertex) *box_vertex = members;
  return BaseGraph(BaseKind::percolation_cluster, Graph::from_edges(members.size(), edges),
                   std::move(coords), std::move(boundary), origin);
}

}  // namespace

BaseGraph build_base(const PercolationSample& s, std::uint32_t label) {
  return cluster_graph(s, label, nullptr);
}

ConditionedCluster origin_cluster_conditioned(std::int32_t half_width, double p,
                                              std::uint64_t seed, std::uint32_t max_attempts) {
  check_parameters(half_width, p);
  for (std::uint32_t attempt = 1; attempt <= max_attempts; ++attempt) {
    auto sample = sample_bonds(half_width, p, seed + attempt - 1);
    if (sample.cluster_of[sample.origin()] != 0) continue;
    std::vector<VertexId> box_vertex;
    auto base = cluster_graph(sample, 0, &box_vertex);
    return ConditionedCluster{std::move(base), std::move(sample), attempt, std::move(box_vertex)};
  }
  throw Error(Errc::conditioning_failed,
              "origin not in the largest cluster after " + std::to_string(max_attempts) + " attempts");
}

void write_sample_text(std::ostream& out, const PercolationSample& s) {
  out << s.half_width << ' ' << format_double(s.p) << ' ' << s.seed << '\n';
  for (std::size_t e = 0; e < s.open.size(); ++e) {
    if (s.open[e]) {
      const auto [u, v] = bond_endpoints(s.half_width, e);
      out << u << ' ' << v << '\n';
    }
  }
}

PercolationSample read_sample_text(std::istream& in) {
  std::int32_t n = 0;
  double p = 0;
  std::uint64_t seed = 0;
  if (!(in >> n >> p >> seed)) throw Error(Errc::parse_error, "bad percolation header");
  check_parameters(n, p);
  const auto w = static_cast<VertexId>(2 * n + 1);
  const std::size_t horizontal = static_cast<std::size_t>(w) * (w - 1);
  std::vector<std::uint8_t> open(bond_count(n), 0);
  VertexId u = 0, v = 0;
  while (in >> u >> v) {
    if (u > v) std::swap(u, v);
    if (v >= static_cast<std::size_t>(w) * w) throw Error(Errc::parse_error, "bond endpoint outside box");
    std::size_t bond = 0;
    if (v == u + 1 && u % w != w - 1) {
      bond = (u / w) * (w - 1) + u % w;
    } else if (v == u + w) {
      bond = horizontal + u;
    } else {
      throw Error(Errc::parse_error, "pair is not a nearest-neighbour bond");
    }
    open[bond] = 1;
  }
  if (!in.eof()) throw Error(Errc::parse_error, "trailing garbage in sample file");
  return make_sample(n, p, seed, std::move(open));
}

}  // namespace combwalk
