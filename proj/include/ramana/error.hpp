#pragma once

#include <stdexcept>
#include <string>

namespace ramana {

enum class ErrorCode {
  kNonOrthonormal,
  kNotPsdInput,
  kDimensionMismatch,
  kInfeasibleInput,
  kSingularM,
  kDependentConstraints,
  kInconsistentRhs,
  kIterationLimit,
  kSubsolverFailure,
  kNumericalRankAmbiguity,
  kShapeMismatch,
  kInductionBreak,
  kParseError,
  kUnsupportedBlockStructure,
  kIoError,
  kUsage,
};

const char* ToString(ErrorCode code);

// Every library failure is reported through this one exception type; the
// code lets callers (and the CLI exit-code mapping) branch without parsing
// the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ToString(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ramana
