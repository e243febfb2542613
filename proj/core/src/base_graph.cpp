#include "combwalk/base_graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>

#include "combwalk/error.hpp"

namespace combwalk {

std::string_view to_string(BaseKind kind) noexcept {
  switch (kind) {
    case BaseKind::z_segment: return "z-segment";
    case BaseKind::z2_box: return "z2-box";
    case BaseKind::gasket: return "gasket";
    case BaseKind::percolation_cluster: return "percolation-cluster";
  }
  return "unknown";
}

std::optional<BaseKind> parse_base_kind(std::string_view text) noexcept {
  for (auto k : {BaseKind::z_segment, BaseKind::z2_box, BaseKind::gasket,
                 BaseKind::percolation_cluster}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

BaseGraph::BaseGraph(BaseKind kind, Graph graph, std::vector<Coord> coords,
                     std::vector<VertexId> boundary, VertexId origin)
    : kind_(kind),
      graph_(std::move(graph)),
      coords_(std::move(coords)),
      boundary_(std::move(boundary)),
      origin_(origin) {
  if (graph_.vertex_count() == 0) throw Error(Errc::empty_base, "base graph has no vertices");
  if (!coords_.empty() && coords_.size() != graph_.vertex_count()) {
    throw Error(Errc::bad_parameter, "coordinate count does not match vertex count");
  }
  if (origin_ >= graph_.vertex_count()) throw Error(Errc::bad_parameter, "origin out of range");
  if (!is_connected(graph_)) throw Error(Errc::disconnected, "base graph must be connected");
  std::sort(boundary_.begin(), boundary_.end());
  boundary_.erase(std::unique(boundary_.begin(), boundary_.end()), boundary_.end());
  truncation_ = bfs_distances(graph_, boundary_);
}

std::optional<VertexId> BaseGraph::find(Coord c) const {
  for (std::size_t v = 0; v < coords_.size(); ++v) {
    if (coords_[v] == c) return static_cast<VertexId>(v);
  }
  return std::nullopt;
}

BaseGraph make_z_segment(std::int32_t half_width) {
  if (half_width < 1) throw Error(Errc::bad_parameter, "z-segment needs N >= 1");
  const auto n = static_cast<std::size_t>(2 * half_width + 1);
  std::vector<Edge> edges;
  std::vector<Coord> coords(n);
  for (std::size_t i = 0; i < n; ++i) {
    coords[i] = {static_cast<std::int32_t>(i) - half_width, 0};
    if (i + 1 < n) edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
  }
  return BaseGraph(BaseKind::z_segment, Graph::from_edges(n, edges), std::move(coords),
                   {0, static_cast<VertexId>(n - 1)}, static_cast<VertexId>(half_width));
}

BaseGraph make_z2_box(std::int32_t half_width) {
  if (half_width < 1) throw Error(Errc::bad_parameter, "z2-box needs N >= 1");
  const std::int32_t w = 2 * half_width + 1;
  const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(w);
  auto id = [w](std::int32_t col, std::int32_t row) {
    return static_cast<VertexId>(row * w + col);
  };
  std::vector<Edge> edges;
  edges.reserve(2 * n);
  std::vector<Coord> coords(n);
  std::vector<VertexId> boundary;
  for (std::int32_t row = 0; row < w; ++row) {
    for (std::int32_t col = 0; col < w; ++col) {
      coords[id(col, row)] = {col - half_width, row - half_width};
      if (col + 1 < w) edges.emplace_back(id(col, row), id(col + 1, row));
      if (row + 1 < w) edges.emplace_back(id(col, row), id(col, row + 1));
      if (row == 0 || col == 0 || row == w - 1 || col == w - 1) boundary.push_back(id(col, row));
    }
  }
  return BaseGraph(BaseKind::z2_box, Graph::from_edges(n, edges), std::move(coords),
                   std::move(boundary), id(half_width, half_width));
}

namespace {

struct GasketPieces {
  std::vector<Coord> coords;
  std::vector<Edge> edges;
};

// Level L+1 is three copies of level L translated by (0,0), (s,0), (0,s)
// with the shared corners identified.
GasketPieces gasket_pieces(std::uint32_t level) {
  std::vector<std::pair<Coord, Coord>> segs{{{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}, {{1, 0}, {0, 1}}};
  std::int32_t side = 1;
  for (std::uint32_t l = 0; l < level; ++l) {
    std::vector<std::pair<Coord, Coord>> next;
    next.reserve(segs.size() * 3);
    for (Coord shift : {Coord{0, 0}, Coord{side, 0}, Coord{0, side}}) {
      for (const auto& [a, b] : segs) {
        next.push_back({{a.x + shift.x, a.y + shift.y}, {b.x + shift.x, b.y + shift.y}});
      }
    }
    segs = std::move(next);
    side *= 2;
  }
  std::vector<Coord> coords;
  coords.reserve(segs.size() * 2);
  for (const auto& [a, b] : segs) {
    coords.push_back(a);
    coords.push_back(b);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  auto index = [&coords](Coord c) {
    return static_cast<VertexId>(std::lower_bound(coords.begin(), coords.end(), c) - coords.begin());
  };
  GasketPieces out;
  out.edges.reserve(segs.size());
  for (const auto& [a, b] : segs) {
    VertexId u = index(a), v = index(b);
    out.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  out.coords = std::move(coords);
  return out;
}

}  // namespace

BaseGraph make_gasket(std::uint32_t level) {
  if (level > 12) throw Error(Errc::bad_parameter, "gasket level above 12 is not supported");
  auto pieces = gasket_pieces(level);
  const std::int32_t side = 1 << level;
  const auto n = pieces.coords.size();
  auto index = [&](Coord c) {
    return static_cast<VertexId>(std::lower_bound(pieces.coords.begin(), pieces.coords.end(), c) -
                                 pieces.coords.begin());
  };
  const VertexId origin = index({0, 0});
  std::vector<VertexId> boundary{index({side, 0}), index({0, side})};
  return BaseGraph(BaseKind::gasket, Graph::from_edges(n, pieces.edges), std::move(pieces.coords),
                   std::move(boundary), origin);
}

std::vector<VertexId> gasket_corners(const BaseGraph& gasket) {
  if (gasket.kind() != BaseKind::gasket) throw Error(Errc::bad_parameter, "not a gasket");
  std::int32_t side = 0;
  for (const auto& c : gasket.coords()) side = std::max(side, c.x);
  return {*gasket.find({0, 0}), *gasket.find({side, 0}), *gasket.find({0, side})};
}

BaseGraph build_base(const LatticeBaseSpec& spec) {
  return std::visit(
      [](const auto& s) -> BaseGraph {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ZSegmentSpec>) return make_z_segment(s.half_width);
        else if constexpr (std::is_same_v<T, Z2BoxSpec>) return make_z2_box(s.half_width);
        else return make_gasket(s.level);
      },
      spec);
}

std::uint64_t sup_distance(const BaseGraph& g, VertexId u, VertexId v) {
  if (!g.has_coords()) throw Error(Errc::metric_unsupported, "base graph carries no coordinates");
  const auto& a = g.coord(u);
  const auto& b = g.coord(v);
  const auto dx = std::llabs(static_cast<long long>(a.x) - b.x);
  const auto dy = std::llabs(static_cast<long long>(a.y) - b.y);
  return static_cast<std::uint64_t>(std::max(dx, dy));
}

void write_graph_text(std::ostream& out, const BaseGraph& g) {
  out << to_string(g.kind()) << ' ' << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.graph().edges()) out << u << ' ' << v << '\n';
  for (std::size_t v = 0; v < g.coords().size(); ++v) {
    out << v << ' ' << g.coords()[v].x << ' ' << g.coords()[v].y << '\n';
  }
}

BaseGraph read_graph_text(std::istream& in) {
  std::string kind_text;
  std::size_t n = 0, m = 0;
  if (!(in >> kind_text >> n >> m)) throw Error(Errc::parse_error, "bad graph header");
  const auto kind = parse_base_kind(kind_text);
  if (!kind) throw Error(Errc::parse_error, "unknown graph kind '" + kind_text + "'");
  std::vector<Edge> edges(m);
  for (auto& [u, v] : edges) {
    if (!(in >> u >> v)) throw Error(Errc::parse_error, "truncated edge list");
  }
  std::vector<Coord> coords;
  std::vector<bool> seen;
  std::size_t id = 0;
  Coord c;
  while (in >> id >> c.x >> c.y) {
    if (id >= n) throw Error(Errc::parse_error, "coordinate line for unknown vertex");
    if (coords.empty()) {
      coords.resize(n);
      seen.assign(n, false);
    }
    coords[id] = c;
    seen[id] = true;
  }
  if (!in.eof()) throw Error(Errc::parse_error, "trailing garbage in graph file");
  if (!coords.empty() && std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(Errc::parse_error, "coordinates given for only some vertices");
  }
  auto graph = Graph::from_edges(n, edges);

  // Boundary and origin are not stored; they follow from kind and coordinates.
  std::vector<VertexId> boundary;
  VertexId origin = 0;
  if (!coords.empty()) {
    std::int32_t extent = 0;
    for (const auto& p : coords) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    for (std::size_t v = 0; v < n; ++v) {
      const auto& p = coords[v];
      if (p.x == 0 && p.y == 0) origin = static_cast<VertexId>(v);
      const bool on_edge = *kind == BaseKind::gasket
                               ? ((p.x == extent && p.y == 0) || (p.x == 0 && p.y == extent))
                               : std::max(std::abs(p.x), std::abs(p.y)) == extent;
      if (on_edge) boundary.push_back(static_cast<VertexId>(v));
    }
  }
  return BaseGraph(*kind, std::move(graph), std::move(coords), std::move(boundary), origin);
}

}  // namespace combwalk
