#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cli {

// Closed range lo:hi:step.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  std::size_t count() const;
  double at(std::size_t i) const;
  bool operator==(const Range&) const = default;
};

Range parse_range(std::string_view text);

// One curve of a figure: a full set of stage channels and fixed values.
struct Series {
  std::string label;
  std::string dist_a = "identity";
  std::string dist_b = "identity";
  std::string post = "identity";
  double tau = 1.0;
  double nbar = 30.0;
  std::uint64_t seed = 0;
  bool operator==(const Series&) const = default;
};

struct RunConfig {
  std::string command;
  std::string preset;
  std::string state = "tmsv";
  std::string dist_a = "identity";
  std::string dist_b = "identity";
  std::string post = "identity";
  double tau = 1.0;
  double nbar = 30.0;
  std::string scheme = "adaptive";
  std::string param;
  std::string stage = "none";
  std::optional<Range> range;
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  double sigma = 1.0;
  std::vector<Series> series;
  std::string version;
  std::string env_convention;

  bool operator==(const RunConfig&) const = default;
};

extern const char* const kCommands[];

// Canonicalizes specs, fills defaults (range, param, version, convention) and
// validates. Idempotent.
RunConfig resolve(RunConfig cfg);

// Series to run: cfg.series, or one series built from the base fields.
std::vector<Series> effective_series(const RunConfig& cfg);

nlohmann::ordered_json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

std::string meta_line(const RunConfig& cfg);
// Accepts a "# meta: {...}" line or a JSON document with a "meta" object.
RunConfig parse_meta(std::string_view text);

RunConfig figure_preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace cli
