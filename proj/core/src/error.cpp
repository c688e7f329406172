#include "potts_forge/error.hpp"

namespace potts_forge {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyDataSet: return "EmptyDataSet";
    case ErrorCode::DegenerateGap: return "DegenerateGap";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidDataSet: return "InvalidDataSet";
    case ErrorCode::DegenerateDataSet: return "DegenerateDataSet";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace potts_forge
