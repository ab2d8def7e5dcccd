#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "xri/bus/topic.hpp"
#include "xri/core/command.hpp"
#include "xri/core/event.hpp"

// Canonical payloads: JSON objects with sorted keys, no insignificant
// whitespace, shortest round-trip reals. Every payload carries "t", "seq"
// and "type".
namespace xri::bus {

inline constexpr int kProtoVersion = 1;

struct Envelope {
  Topic topic;
  std::string payload;
  bool retain = false;

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

struct StampedCommand {
  TimeMs t = 0;
  Seq seq = 0;
  Command command;

  friend bool operator==(const StampedCommand&, const StampedCommand&) = default;
};

// Kind-only forms (no "t"/"seq"), used inside trace entries.
nlohmann::json event_kind_to_json(const EventKind& kind);
EventKind event_kind_from_json(const nlohmann::json& j);
nlohmann::json command_to_json(const Command& c);
Command command_from_json(const nlohmann::json& j);

std::string encode_event(const Event& e);
// Throws Error(kUnknownType), Error(kMissingField) or Error(kInvalidValue).
Event decode_event(std::string_view payload);

// `t`/`seq` are those of the event that caused the command.
std::string encode_command(const Command& c, TimeMs t, Seq seq);
StampedCommand decode_command(std::string_view payload);

Topic event_topic(const std::string& space_id, const EventKind& kind);
Topic command_topic(const std::string& space_id, const Command& c);

Envelope event_envelope(const std::string& space_id, const Event& e);
Envelope command_envelope(const std::string& space_id, const Command& c, TimeMs t, Seq seq);

// Filters for the runtime ingress: user actions and UI input.
std::string user_ingress_filter(const std::string& space_id);
std::string ui_ingress_filter(const std::string& space_id);

nlohmann::json parse_payload(std::string_view payload);

}  // namespace xri::bus
