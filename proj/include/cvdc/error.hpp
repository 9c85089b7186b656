#pragma once

#include <stdexcept>
#include <string>

namespace cvdc {

enum class ErrorCode {
  kDomain,             // parameter outside its admissible range
  kContract,           // input violates a structural precondition
  kUnphysical,         // covariance or eigenvalue below the uncertainty bound
  kInfeasible,         // energy budget cannot be met
  kBracket,            // root bracket without a sign change
  kThresholdNotFound,  // no threshold inside the search window
  kNonFinite,          // objective returned NaN/inf
  kParse,              // malformed state/channel spec string
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Spec-string syntax error; column is 1-based within the offending string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : Error(ErrorCode::kParse, what + " (column " + std::to_string(column) + ")"),
        column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

}  // namespace cvdc
