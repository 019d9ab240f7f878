#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pstar {

enum class ErrorCode {
  kNonSquare,
  kAsymmetricEntry,
  kNonzeroDiagonal,
  kVertexOutOfRange,
  kSelfLoop,
  kNonFinite,
  kTooLarge,
  kNonConvergence,
  kBoundaryMoments,
  kBadDimension,
  kSingularJacobian,
  kMaxIterExceeded,
  kLowTemperatureSuspected,
  kLowTemperatureEncountered,
  kEmptyDataset,
  kDivergence,
  kSeparation,
  kParseError,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for every failure in the library. The code is the
/// programmatic contract; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pstar
