#include "combwalk/error.hpp"

namespace combwalk {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::empty_base: return "empty-base";
    case Errc::metric_unsupported: return "metric-unsupported";
    case Errc::bad_parameter: return "bad-parameter";
    case Errc::conditioning_failed: return "conditioning-failed";
    case Errc::overlapping_boundary: return "overlapping-boundary";
    case Errc::disconnected: return "disconnected";
    case Errc::invalid_flow: return "invalid-flow";
    case Errc::horizon_exceeds_truncation: return "horizon-exceeds-truncation";
    case Errc::divergent: return "divergent";
    case Errc::bad_range: return "bad-range";
    case Errc::bad_height: return "bad-height";
    case Errc::cap_exceeded: return "cap-exceeded";
    case Errc::ball_exceeds_truncation: return "ball-exceeds-truncation";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace combwalk
