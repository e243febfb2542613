#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace combwalk::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kRuntime = 3 };

/// Bad configuration; `field` names the offending key path.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct GraphSpec {
  std::string kind = "z2_box";  // z_segment | z2_box | gasket | percolation
  std::int32_t half_width = 8;
  std::uint32_t level = 3;
  double p = 0.7;
  std::uint32_t max_attempts = 100;
};

struct ProfileSpec {
  std::string family = "logarithmic";  // polynomial | logarithmic
  double gamma = 1.0;
  std::string metric;                  // graph | sup; empty = default for the base
};

struct SourceSpec {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::uint32_t h = 0;
};

struct RunConfig {
  std::string command;  // build | resistance | kernel | walk | collide | percolation | experiment
  std::optional<std::uint64_t> seed;
  GraphSpec graph;
  std::optional<ProfileSpec> profile;
  std::optional<SourceSpec> source;
  std::uint64_t horizon = 0;
  std::vector<std::uint64_t> radii;
  std::uint64_t trials = 1;
  std::uint32_t threads = 1;
  std::string normalization = "deg-normalized";
  std::string truncation = "strict";  // strict | finite
  std::vector<double> gammas;
  std::int32_t dimension = 2;
};

/// Strict parse: unknown keys, wrong types and out-of-range values throw
/// ValidationError.
RunConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Runs a validated config, writing artifacts and manifest.json into `out`.
/// Files written before a failure are removed.
void execute(const RunConfig& config, const std::filesystem::path& out);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace combwalk::cli
