#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "run_config.hpp"

namespace cli {

using Cell = std::variant<double, std::string, bool, std::uint64_t>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Extra per-run results (JSON objects), e.g. scatter summaries.
  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
};

void write_csv(std::ostream& os, const RunConfig& cfg, const Table& t);
void write_json(std::ostream& os, const RunConfig& cfg, const Table& t);

}  // namespace cli
