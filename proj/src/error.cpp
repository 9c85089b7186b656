#include "cvdc/error.hpp"

namespace cvdc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kContract: return "contract";
    case ErrorCode::kUnphysical: return "unphysical";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kBracket: return "bracket";
    case ErrorCode::kThresholdNotFound: return "threshold-not-found";
    case ErrorCode::kNonFinite: return "non-finite";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace cvdc
