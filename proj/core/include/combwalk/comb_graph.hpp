#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "combwalk/base_graph.hpp"
#include "combwalk/graph.hpp"
#include "combwalk/profile.hpp"

namespace combwalk {

/// Comb(G~, f): every base vertex v carries a tooth {(v,n) : 0 <= n <= f(v)}.
///
/// Vertex ids are dense. Base vertex v keeps id v at height 0; tooth
/// vertices follow, grouped by base vertex and ordered by height. Edges are
/// the base edges at height 0 plus the vertical unit steps.
class CombGraph {
 public:
  using vertex_type = VertexId;
  using base_type = VertexId;

  CombGraph(BaseGraph base, TeethProfile profile, std::vector<std::uint32_t> heights,
            std::vector<std::uint64_t> radii);

  const BaseGraph& base() const noexcept { return base_; }
  const TeethProfile& profile() const noexcept { return profile_; }
  const Graph& graph() const noexcept { return graph_; }

  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  std::size_t edge_count() const noexcept { return graph_.edge_count(); }

  VertexId origin() const noexcept { return origin_; }
  /// o_V = (o, 0).
  VertexId root() const noexcept { return origin_; }

  std::uint32_t tooth_height(VertexId base_vertex) const noexcept { return heights_[base_vertex]; }
  std::span<const std::uint32_t> tooth_heights() const noexcept { return heights_; }
  std::uint32_t max_tooth_height() const noexcept { return max_height_; }
  /// Profile-metric distance d(o, v) used to size the tooth at v.
  std::uint64_t base_radius(VertexId base_vertex) const noexcept { return radii_[base_vertex]; }

  VertexId base_of(VertexId v) const noexcept { return base_of_[v]; }
  std::uint32_t height_of(VertexId v) const noexcept {
    return v < base_.vertex_count() ? 0 : v - tooth_start_[base_of_[v]] + 1;
  }
  /// Id of (base_vertex, height); Errc::bad_height if height > f(base_vertex).
  VertexId vertex(VertexId base_vertex, std::uint32_t height) const;

  std::size_t degree(VertexId v) const noexcept { return graph_.degree(v); }
  VertexId neighbor(VertexId v, std::size_t i) const noexcept { return graph_.neighbor(v, i); }

  /// Steps needed before a walk from v can feel the base truncation.
  std::size_t truncation_radius(VertexId v) const noexcept;

 private:
  BaseGraph base_;
  TeethProfile profile_;
  std::vector<std::uint32_t> heights_;
  std::vector<std::uint64_t> radii_;
  std::vector<VertexId> tooth_start_;
  std::vector<VertexId> base_of_;
  Graph graph_;
  VertexId origin_ = 0;
  std::uint32_t max_height_ = 0;
};

/// f(v) = eval_profile(profile, d(o, v)) with d the profile's metric.
/// Errc::metric_unsupported for sup-norm on a coordinate-free base.
CombGraph attach_teeth(BaseGraph base, const TeethProfile& profile);

/// Comb with explicitly prescribed tooth heights (one per base vertex).
CombGraph attach_teeth(BaseGraph base, std::vector<std::uint32_t> heights);

/// Profile-metric distance from `origin` to every base vertex.
std::vector<std::uint64_t> profile_distances(const BaseGraph& base, Metric metric, VertexId origin);

/// "comb n m", m edge lines, then "u baseId height" per vertex.
void write_comb_text(std::ostream& out, const CombGraph& comb);

}  // namespace combwalk
