#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "combwalk/base_graph.hpp"

namespace combwalk {

/// Bernoulli(p) bond configuration on the box B_inf(0, N) of Z^2.
///
/// Box vertices use the z2-box numbering id = (y+N)(2N+1) + (x+N). Bond e
/// is open iff counter_uniform(seed, e) < p, so configurations for
/// different p under one seed are monotonically coupled.
struct PercolationSample {
  std::int32_t half_width = 1;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> open;
  /// Cluster label per box vertex. Label 0 is a largest cluster; labels
  /// are ordered by decreasing size, ties by smallest contained vertex.
  std::vector<std::uint32_t> cluster_of;
  std::vector<std::uint32_t> cluster_sizes;

  std::size_t width() const noexcept { return static_cast<std::size_t>(2 * half_width + 1); }
  std::size_t vertex_count() const noexcept { return width() * width(); }
  std::size_t bond_count() const noexcept { return 2 * width() * (width() - 1); }
  VertexId origin() const noexcept { return static_cast<VertexId>(vertex_count() / 2); }
  VertexId vertex_at(std::int32_t x, std::int32_t y) const noexcept {
    return static_cast<VertexId>((y + half_width) * static_cast<std::int32_t>(width()) + x + half_width);
  }
};

std::size_t bond_count(std::int32_t half_width) noexcept;
/// Endpoints (u < v) of bond e in the box.
Edge bond_endpoints(std::int32_t half_width, std::size_t bond);

/// Errc::bad_parameter unless 0 <= p <= 1 and N >= 1.
PercolationSample sample_bonds(std::int32_t half_width, double p, std::uint64_t seed);

/// Wraps a given bond bitmap and computes its cluster partition.
PercolationSample make_sample(std::int32_t half_width, double p, std::uint64_t seed,
                              std::vector<std::uint8_t> open);

struct ClusterSummary {
  std::size_t cluster_count = 0;
  std::vector<std::uint32_t> sizes;  // by label
  std::uint32_t largest_size = 0;
  std::uint32_t origin_label = 0;
  std::uint32_t origin_size = 0;
  std::size_t open_bonds = 0;
};

ClusterSummary clusters(const PercolationSample& s);

/// Cluster `label` as a connected base graph with ambient coordinates.
/// Vertices on the box face |z|_inf = N form the truncation boundary.
/// Errc::empty_base if the label does not exist.
BaseGraph build_base(const PercolationSample& s, std::uint32_t label = 0);

struct ConditionedCluster {
  BaseGraph base;
  PercolationSample sample;
  std::uint32_t attempts = 0;
  /// Box vertex id of each cluster vertex.
  std::vector<VertexId> box_vertex;
};

/// Resamples with seeds seed, seed+1, ... until the origin lies in the
/// largest cluster of the box (finite-volume stand-in for 0 in C_inf).
/// Errc::conditioning_failed after max_attempts.
ConditionedCluster origin_cluster_conditioned(std::int32_t half_width, double p,
                                              std::uint64_t seed, std::uint32_t max_attempts);

/// "N p seed" header followed by one "u v" line per open bond.
void write_sample_text(std::ostream& out, const PercolationSample& s);
PercolationSample read_sample_text(std::istream& in);

}  // namespace combwalk
