#include "pstar/error.hpp"

namespace pstar {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonSquare: return "NonSquare";
    case ErrorCode::kAsymmetricEntry: return "AsymmetricEntry";
    case ErrorCode::kNonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::kVertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kBoundaryMoments: return "BoundaryMoments";
    case ErrorCode::kBadDimension: return "BadDimension";
    case ErrorCode::kSingularJacobian: return "SingularJacobian";
    case ErrorCode::kMaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::kLowTemperatureSuspected: return "LowTemperatureSuspected";
    case ErrorCode::kLowTemperatureEncountered: return "LowTemperatureEncountered";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kDivergence: return "Divergence";
    case ErrorCode::kSeparation: return "Separation";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace pstar
