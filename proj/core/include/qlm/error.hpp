#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace qlm {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  IndexOutOfRange,
  DuplicateIndex,
  ZeroVector,
  DimensionMismatch,
  NotNormalized,
  NotHermitian,
  TimeOutOfTableRange,
  EigendecompositionFailure,
  StepBudgetExceeded,
  ParseError,
  ValidationError,
  UnknownKey,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library is a qlm::Error carrying a stable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Position is 1-based; absent when the underlying parser could not locate it.
struct SourcePosition {
  std::size_t line = 0;
  std::size_t column = 0;
};

// Scenario document errors. `field` names the offending key when there is one.
class ConfigError : public Error {
 public:
  ConfigError(ErrorCode code, const std::string& message,
              std::optional<SourcePosition> position = std::nullopt,
              std::string field = {})
      : Error(code, message), position_(position), field_(std::move(field)) {}

  const std::optional<SourcePosition>& position() const noexcept { return position_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::optional<SourcePosition> position_;
  std::string field_;
};

}  // namespace qlm
