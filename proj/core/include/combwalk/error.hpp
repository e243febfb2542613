#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace combwalk {

/// Failure categories surfaced by the library. The string form (see
/// to_string) is the stable tag written into CLI diagnostics.
enum class Errc {
  empty_base,
  metric_unsupported,
  bad_parameter,
  conditioning_failed,
  overlapping_boundary,
  disconnected,
  invalid_flow,
  horizon_exceeds_truncation,
  divergent,
  bad_range,
  bad_height,
  cap_exceeded,
  ball_exceeds_truncation,
  parse_error,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }
  std::string_view tag() const noexcept { return to_string(code_); }

 private:
  Errc code_;
};

}  // namespace combwalk
