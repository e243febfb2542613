#include "combwalk/comb_graph.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>

#include "combwalk/error.hpp"

namespace combwalk {

CombGraph::CombGraph(BaseGraph base, TeethProfile profile, std::vector<std::uint32_t> heights,
                     std::vector<std::uint64_t> radii)
    : base_(std::move(base)),
      profile_(profile),
      heights_(std::move(heights)),
      radii_(std::move(radii)) {
  const std::size_t n = base_.vertex_count();
  if (heights_.size() != n || radii_.size() != n) {
    throw Error(Errc::bad_parameter, "tooth data must have one entry per base vertex");
  }
  origin_ = profile_.origin.value_or(base_.origin());
  if (origin_ >= n) throw Error(Errc::bad_parameter, "profile origin is not a base vertex");
  profile_.origin = origin_;

  std::uint64_t total = n;
  for (auto h : heights_) total += h;
  if (total >= std::numeric_limits<VertexId>::max()) {
    throw Error(Errc::bad_parameter, "comb has too many vertices (" + std::to_string(total) + ")");
  }
  tooth_start_.resize(n);
  base_of_.resize(total);
  std::vector<Edge> edges = base_.graph().edges();
  edges.reserve(edges.size() + (total - n));
  VertexId next = static_cast<VertexId>(n);
  for (VertexId v = 0; v < n; ++v) {
    base_of_[v] = v;
    tooth_start_[v] = next;
    max_height_ = std::max(max_height_, heights_[v]);
    VertexId below = v;
    for (std::uint32_t h = 1; h <= heights_[v]; ++h) {
      base_of_[next] = v;
      edges.emplace_back(below, next);
      below = next++;
    }
  }
  graph_ = Graph::from_edges(total, edges);
}

VertexId CombGraph::vertex(VertexId base_vertex, std::uint32_t height) const {
  if (base_vertex >= base_.vertex_count()) throw Error(Errc::bad_parameter, "unknown base vertex");
  if (height > heights_[base_vertex]) {
    throw Error(Errc::bad_height, "height " + std::to_string(height) + " exceeds tooth height " +
                                      std::to_string(heights_[base_vertex]));
  }
  return height == 0 ? base_vertex : tooth_start_[base_vertex] + height - 1;
}

std::size_t CombGraph::truncation_radius(VertexId v) const noexcept {
  const std::size_t r = base_.truncation_radius(base_of_[v]);
  return r == kUnreachable ? kUnreachable : r + height_of(v);
}

std::vector<std::uint64_t> profile_distances(const BaseGraph& base, Metric metric, VertexId origin) {
  std::vector<std::uint64_t> out(base.vertex_count());
  if (metric == Metric::sup_norm) {
    if (!base.has_coords()) {
      throw Error(Errc::metric_unsupported, "sup-norm metric needs planar coordinates");
    }
    for (VertexId v = 0; v < out.size(); ++v) out[v] = sup_distance(base, origin, v);
  } else {
    auto d = bfs_distances(base.graph(), origin);
    std::copy(d.begin(), d.end(), out.begin());
  }
  return out;
}

CombGraph attach_teeth(BaseGraph base, const TeethProfile& profile) {
  const VertexId origin = profile.origin.value_or(base.origin());
  if (origin >= base.vertex_count()) throw Error(Errc::bad_parameter, "profile origin is not a base vertex");
  auto radii = profile_distances(base, profile.metric, origin);
  std::vector<std::uint32_t> heights(radii.size());
  for (std::size_t v = 0; v < radii.size(); ++v) {
    const auto h = eval_profile(profile, radii[v]);
    if (h > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(Errc::bad_parameter, "tooth height overflow at vertex " + std::to_string(v));
    }
    heights[v] = static_cast<std::uint32_t>(h);
  }
  TeethProfile p = profile;
  p.origin = origin;
  return CombGraph(std::move(base), p, std::move(heights), std::move(radii));
}

CombGraph attach_teeth(BaseGraph base, std::vector<std::uint32_t> heights) {
  TeethProfile p;
  p.origin = base.origin();
  auto radii = profile_distances(base, Metric::graph_distance, base.origin());
  return CombGraph(std::move(base), p, std::move(heights), std::move(radii));
}

void write_comb_text(std::ostream& out, const CombGraph& comb) {
  out << "comb " << comb.vertex_count() << ' ' << comb.edge_count() << '\n';
  for (const auto& [u, v] : comb.graph().edges()) out << u << ' ' << v << '\n';
  for (VertexId v = 0; v < comb.vertex_count(); ++v) {
    out << v << ' ' << comb.base_of(v) << ' ' << comb.height_of(v) << '\n';
  }
}

}  // namespace combwalk
