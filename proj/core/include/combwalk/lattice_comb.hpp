#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "combwalk/profile.hpp"

namespace combwalk {

struct LatticeSite {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend auto operator<=>(const LatticeSite&, const LatticeSite&) = default;
};

struct LatticeVertex {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t h = 0;
  friend auto operator<=>(const LatticeVertex&, const LatticeVertex&) = default;
};

/// Comb over the full lattice Z or Z^2, generated on the fly.
///
/// Nothing is materialised, so walks of any length run without truncation.
/// Used for long-horizon Monte Carlo where an explicit truncation would not
/// fit in memory.
class LatticeComb {
 public:
  using vertex_type = LatticeVertex;
  using base_type = LatticeSite;

  /// dimension is 1 or 2. For Z^2 the metric selects sup-norm or the graph
  /// (l1) distance for the profile radius; on Z both coincide with |x|.
  LatticeComb(int dimension, ProfileFamily family, double gamma, Metric metric,
              std::uint64_t table_radius = std::uint64_t{1} << 17);

  int dimension() const noexcept { return dim_; }
  ProfileFamily family() const noexcept { return family_; }
  double gamma() const noexcept { return gamma_; }
  Metric metric() const noexcept { return metric_; }

  std::uint64_t radius(const LatticeSite& s) const noexcept;
  std::uint64_t tooth_height(const LatticeSite& s) const;

  LatticeVertex root() const noexcept { return {}; }
  LatticeSite base_of(const LatticeVertex& v) const noexcept { return {v.x, v.y}; }
  std::int64_t height_of(const LatticeVertex& v) const noexcept { return v.h; }
  std::uint64_t base_radius(const LatticeSite& s) const noexcept { return radius(s); }
  /// Graph distance between base sites (|.|_1 on the lattice).
  static std::uint64_t base_distance(const LatticeSite& a, const LatticeSite& b) noexcept;

  std::size_t degree(const LatticeVertex& v) const;
  LatticeVertex neighbor(const LatticeVertex& v, std::size_t i) const;

 private:
  int dim_;
  ProfileFamily family_;
  double gamma_;
  Metric metric_;
  std::vector<std::uint64_t> table_;
};

}  // namespace combwalk
