#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "combwalk/graph.hpp"

namespace combwalk {

enum class ProfileFamily { polynomial, logarithmic };
enum class Metric { graph_distance, sup_norm };

std::string_view to_string(ProfileFamily f) noexcept;
std::string_view to_string(Metric m) noexcept;
std::optional<ProfileFamily> parse_profile_family(std::string_view text) noexcept;
std::optional<Metric> parse_metric(std::string_view text) noexcept;

/// Radial tooth profile: tooth height at distance k from the origin is
/// floor(k^gamma) (polynomial) or floor(ln(max(k,1))^gamma) (logarithmic).
/// The logarithm is natural.
struct TeethProfile {
  ProfileFamily family = ProfileFamily::polynomial;
  double gamma = 1.0;
  Metric metric = Metric::graph_distance;
  /// Origin o in the base graph; unset means the base graph's default origin.
  std::optional<VertexId> origin;
};

/// Saturates at kMaxToothHeight.
std::uint64_t eval_profile(ProfileFamily family, double gamma, std::uint64_t k);
inline std::uint64_t eval_profile(const TeethProfile& p, std::uint64_t k) {
  return eval_profile(p.family, p.gamma, k);
}

inline constexpr std::uint64_t kMaxToothHeight = std::uint64_t{1} << 40;

}  // namespace combwalk
