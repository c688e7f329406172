#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace potts_forge {

enum class ErrorCode {
  InvalidGraph,
  ModelMismatch,
  InvalidState,
  TooLarge,
  EmptyDataSet,
  DegenerateGap,
  InvalidArgument,
  InvalidDataSet,
  DegenerateDataSet,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying one of the library's error categories. The message is
/// prefixed with the category name, e.g. "InvalidGraph: self-loop at vertex 2".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace potts_forge
