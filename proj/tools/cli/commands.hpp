#pragma once

#include "run_config.hpp"
#include "table.hpp"

namespace cli {

Table run(const RunConfig& cfg);

// Reference checks; `passed` is false when any check is outside tolerance.
Table verify(bool& passed);

}  // namespace cli
