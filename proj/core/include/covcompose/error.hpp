#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace covcompose {

enum class ErrorCode {
  DimensionTooSmall,
  DimensionMismatch,
  ConvergenceFailure,
  NotPositiveDefinite,
  NotNearlyPSD,
  ImageTooSmall,
  DegenerateImage,
  WeightOutOfRange,
  UnknownKey,
  BadValue,
  MissingInput,
  UnknownPreset,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace covcompose
