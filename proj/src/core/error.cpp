#include "xri/core/error.hpp"

namespace xri {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidIdentifier: return "INVALID_IDENTIFIER";
    case ErrorCode::kMalformedTopic: return "MALFORMED_TOPIC";
    case ErrorCode::kUnknownType: return "UNKNOWN_TYPE";
    case ErrorCode::kMissingField: return "MISSING_FIELD";
    case ErrorCode::kInvalidValue: return "INVALID_VALUE";
    case ErrorCode::kUnsupportedAction: return "UNSUPPORTED_ACTION";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kUnknownZone: return "UNKNOWN_ZONE";
    case ErrorCode::kUnknownDevice: return "UNKNOWN_DEVICE";
    case ErrorCode::kNonMonotoneTime: return "NON_MONOTONE_TIME";
    case ErrorCode::kInvalidLayout: return "INVALID_LAYOUT";
    case ErrorCode::kDisconnected: return "DISCONNECTED";
    case ErrorCode::kTimeout: return "TIMEOUT";
  }
  return "UNKNOWN";
}

namespace {

std::string compose(ErrorCode code, const std::string& detail, const std::string& message) {
  std::string out(to_string(code));
  if (!detail.empty()) out += "(" + detail + ")";
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail, const std::string& message)
    : std::runtime_error(compose(code, detail, message)), code_(code), detail_(std::move(detail)) {}

}  // namespace xri
