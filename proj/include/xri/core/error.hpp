#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xri {

enum class ErrorCode {
  kInvalidIdentifier,
  kMalformedTopic,
  kUnknownType,
  kMissingField,
  kInvalidValue,
  kUnsupportedAction,
  kParseError,
  kUnknownZone,
  kUnknownDevice,
  kNonMonotoneTime,
  kInvalidLayout,
  kDisconnected,
  kTimeout,
};

std::string_view to_string(ErrorCode code);

// Carries a machine-readable code next to the human message. `detail` holds
// the offending field, segment, or identifier when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, const std::string& message = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace xri
