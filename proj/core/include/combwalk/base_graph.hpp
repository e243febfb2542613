#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "combwalk/graph.hpp"

namespace combwalk {

enum class BaseKind { z_segment, z2_box, gasket, percolation_cluster };

std::string_view to_string(BaseKind kind) noexcept;
std::optional<BaseKind> parse_base_kind(std::string_view text) noexcept;

struct Coord {
  std::int32_t x = 0;
  std::int32_t y = 0;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

/// Finite truncation of an infinite base graph G~.
///
/// Besides the adjacency, a base graph records which vertices sit on the
/// truncation boundary, i.e. whose degree in the finite graph differs from
/// the degree in the infinite graph it stands in for. A walk started at v
/// cannot feel the truncation before time truncation_radius(v).
class BaseGraph {
 public:
  BaseGraph(BaseKind kind, Graph graph, std::vector<Coord> coords,
            std::vector<VertexId> boundary, VertexId origin);

  BaseKind kind() const noexcept { return kind_; }
  const Graph& graph() const noexcept { return graph_; }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  std::size_t edge_count() const noexcept { return graph_.edge_count(); }

  bool has_coords() const noexcept { return !coords_.empty(); }
  std::span<const Coord> coords() const noexcept { return coords_; }
  const Coord& coord(VertexId v) const { return coords_.at(v); }

  /// Default origin o (centre of boxes/segments, corner 0 of the gasket).
  VertexId origin() const noexcept { return origin_; }
  std::span<const VertexId> boundary() const noexcept { return boundary_; }

  /// Graph distance from v to the nearest truncation-boundary vertex;
  /// kUnreachable when the graph has no truncation boundary.
  std::size_t truncation_radius(VertexId v) const noexcept { return truncation_[v]; }

  /// Vertex carrying the given coordinates, if any.
  std::optional<VertexId> find(Coord c) const;

 private:
  BaseKind kind_;
  Graph graph_;
  std::vector<Coord> coords_;
  std::vector<VertexId> boundary_;
  VertexId origin_;
  std::vector<std::size_t> truncation_;
};

struct ZSegmentSpec { std::int32_t half_width = 1; };
struct Z2BoxSpec { std::int32_t half_width = 1; };
struct GasketSpec { std::uint32_t level = 0; };
using LatticeBaseSpec = std::variant<ZSegmentSpec, Z2BoxSpec, GasketSpec>;

/// Path on {-N..N}; ids follow x, origin at x = 0.
BaseGraph make_z_segment(std::int32_t half_width);
/// Nearest-neighbour box {-N..N}^2; id = (y+N)(2N+1) + (x+N).
BaseGraph make_z2_box(std::int32_t half_width);
/// Level-L pre-fractal Sierpinski gasket with side 2^L in skew lattice
/// coordinates. Corners (0,0), (2^L,0), (0,2^L) are gasket_corners(); the
/// origin is corner 0 and the two far corners form the truncation boundary.
BaseGraph make_gasket(std::uint32_t level);
std::vector<VertexId> gasket_corners(const BaseGraph& gasket);

BaseGraph build_base(const LatticeBaseSpec& spec);

/// Sup-norm of the coordinate difference |coord(u) - coord(v)|_inf.
std::uint64_t sup_distance(const BaseGraph& g, VertexId u, VertexId v);

/// Line format: "kind n m", m lines "u v", then optional lines "u x y".
void write_graph_text(std::ostream& out, const BaseGraph& g);
BaseGraph read_graph_text(std::istream& in);

}  // namespace combwalk
