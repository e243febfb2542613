#include "combwalk/lattice_comb.hpp"

#include <algorithm>
#include <cstdlib>

#include "combwalk/error.hpp"

namespace combwalk {

LatticeComb::LatticeComb(int dimension, ProfileFamily family, double gamma, Metric metric,
                         std::uint64_t table_radius)
    : dim_(dimension), family_(family), gamma_(gamma), metric_(metric) {
  if (dim_ != 1 && dim_ != 2) throw Error(Errc::bad_parameter, "lattice comb dimension must be 1 or 2");
  table_.resize(table_radius + 1);
  for (std::uint64_t k = 0; k <= table_radius; ++k) table_[k] = eval_profile(family_, gamma_, k);
}

std::uint64_t LatticeComb::radius(const LatticeSite& s) const noexcept {
  const auto ax = static_cast<std::uint64_t>(std::llabs(s.x));
  const auto ay = static_cast<std::uint64_t>(std::llabs(s.y));
  return metric_ == Metric::sup_norm ? std::max(ax, ay) : ax + ay;
}

std::uint64_t LatticeComb::base_distance(const LatticeSite& a, const LatticeSite& b) noexcept {
  return static_cast<std::uint64_t>(std::llabs(a.x - b.x)) + static_cast<std::uint64_t>(std::llabs(a.y - b.y));
}

std::uint64_t LatticeComb::tooth_height(const LatticeSite& s) const {
  const auto r = radius(s);
  return r < table_.size() ? table_[r] : eval_profile(family_, gamma_, r);
}

std::size_t LatticeComb::degree(const LatticeVertex& v) const {
  const auto f = static_cast<std::int64_t>(tooth_height({v.x, v.y}));
  if (v.h == 0) return static_cast<std::size_t>(2 * dim_) + (f > 0 ? 1 : 0);
  return v.h == f ? 1 : 2;
}

LatticeVertex LatticeComb::neighbor(const LatticeVertex& v, std::size_t i) const {
  if (v.h > 0) return i == 0 ? LatticeVertex{v.x, v.y, v.h - 1} : LatticeVertex{v.x, v.y, v.h + 1};
  switch (i) {
    case 0: return {v.x + 1, v.y, 0};
    case 1: return {v.x - 1, v.y, 0};
    default: break;
  }
  if (dim_ == 2) {
    if (i == 2) return {v.x, v.y + 1, 0};
    if (i == 3) return {v.x, v.y - 1, 0};
  }
  return {v.x, v.y, 1};
}

}  // namespace combwalk
