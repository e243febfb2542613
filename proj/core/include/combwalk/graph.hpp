#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace combwalk {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Simple undirected graph in compressed adjacency form. Neighbor lists are
/// sorted; the structure is immutable once built.
class Graph {
 public:
  using vertex_type = VertexId;

  Graph() = default;

  /// Builds from an undirected edge list. Rejects self-loops, duplicate
  /// edges and out-of-range endpoints with Errc::bad_parameter.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  VertexId neighbor(VertexId v, std::size_t i) const noexcept { return targets_[offsets_[v] + i]; }

  /// Index of the directed slot v -> neighbors(v)[i]; slots are numbered
  /// 0 .. 2*edge_count()-1 in adjacency order.
  std::size_t slot(VertexId v, std::size_t i) const noexcept { return offsets_[v] + i; }
  std::size_t slot_begin(VertexId v) const noexcept { return offsets_[v]; }
  /// Slot of the reverse direction u -> v for a slot v -> u.
  std::size_t reverse_slot(std::size_t s) const noexcept { return reverse_[s]; }

  bool adjacent(VertexId u, VertexId v) const noexcept;
  std::vector<Edge> edges() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> targets_;
  std::vector<std::size_t> reverse_;
};

/// Breadth-first graph distances from `source`; kUnreachable where no path.
std::vector<std::size_t> bfs_distances(const Graph& g, VertexId source);

/// Multi-source variant: distance to the nearest vertex of `sources`.
std::vector<std::size_t> bfs_distances(const Graph& g, std::span<const VertexId> sources);

/// Closed graph-distance ball, in breadth-first order.
std::vector<VertexId> ball(const Graph& g, VertexId v, std::size_t radius);

bool is_connected(const Graph& g);

/// Connected-component label per vertex, labels 0.. in order of first vertex.
std::vector<std::uint32_t> component_labels(const Graph& g);

}  // namespace combwalk
