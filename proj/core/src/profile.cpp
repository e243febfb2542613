#include "combwalk/profile.hpp"

#include <cmath>
#include <string>

#include "combwalk/error.hpp"

namespace combwalk {

std::string_view to_string(ProfileFamily f) noexcept {
  return f == ProfileFamily::polynomial ? "polynomial" : "logarithmic";
}

std::string_view to_string(Metric m) noexcept {
  return m == Metric::graph_distance ? "graph-distance" : "sup-norm";
}

std::optional<ProfileFamily> parse_profile_family(std::string_view text) noexcept {
  if (text == "polynomial") return ProfileFamily::polynomial;
  if (text == "logarithmic") return ProfileFamily::logarithmic;
  return std::nullopt;
}

std::optional<Metric> parse_metric(std::string_view text) noexcept {
  if (text == "graph-distance") return Metric::graph_distance;
  if (text == "sup-norm") return Metric::sup_norm;
  return std::nullopt;
}

namespace {

std::uint64_t saturating_floor(long double v) {
  if (!(v < static_cast<long double>(kMaxToothHeight))) return kMaxToothHeight;
  return static_cast<std::uint64_t>(std::floor(v));
}

// Exact k^g for integral g, saturating.
std::uint64_t integral_power(std::uint64_t k, std::uint64_t g) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < g; ++i) {
    if (k != 0 && r > kMaxToothHeight / k) return kMaxToothHeight;
    r *= k;
  }
  return r;
}

}  // namespace

std::uint64_t eval_profile(ProfileFamily family, double gamma, std::uint64_t k) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(Errc::bad_parameter, "profile exponent must be positive, got " + std::to_string(gamma));
  }
  if (family == ProfileFamily::polynomial) {
    if (k == 0) return 0;
    if (gamma == std::floor(gamma) && gamma <= 64.0) {
      return integral_power(k, static_cast<std::uint64_t>(gamma));
    }
    return saturating_floor(std::pow(static_cast<long double>(k), static_cast<long double>(gamma)));
  }
  if (k <= 1) return 0;
  const long double lg = std::log(static_cast<long double>(k));
  return saturating_floor(std::pow(lg, static_cast<long double>(gamma)));
}

}  // namespace combwalk
