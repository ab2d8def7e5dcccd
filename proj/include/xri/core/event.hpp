#pragma once

#include <string>
#include <variant>
#include <vector>

#include "xri/core/types.hpp"

namespace xri {

// Observable status of a device, as carried by DeviceStateChanged.
struct LightStatus {
  bool powered = false;
  friend bool operator==(const LightStatus&, const LightStatus&) = default;
};
struct SwitchStatus {
  SwitchPosition position = SwitchPosition::kOn;
  friend bool operator==(const SwitchStatus&, const SwitchStatus&) = default;
};
struct LuminanceStatus {
  double lux = 0.0;
  friend bool operator==(const LuminanceStatus&, const LuminanceStatus&) = default;
};
struct ProjectorStatus {
  bool powered = false;
  ProjectorMode mode = ProjectorMode::kOff;
  friend bool operator==(const ProjectorStatus&, const ProjectorStatus&) = default;
};
struct DisplayStatus {
  Theme scene = Theme::kNeutral;
  friend bool operator==(const DisplayStatus&, const DisplayStatus&) = default;
};
using DeviceStatus = std::variant<LightStatus, SwitchStatus, LuminanceStatus, ProjectorStatus, DisplayStatus>;

namespace ev {

struct UserAppeared {
  friend bool operator==(const UserAppeared&, const UserAppeared&) = default;
};
struct Gesture {
  std::string name;
  friend bool operator==(const Gesture&, const Gesture&) = default;
};
struct UserMoved {
  Position to;
  friend bool operator==(const UserMoved&, const UserMoved&) = default;
};
struct ZoneEntry {
  ZoneId zone;
  friend bool operator==(const ZoneEntry&, const ZoneEntry&) = default;
};
struct ZoneExit {
  ZoneId zone;
  friend bool operator==(const ZoneExit&, const ZoneExit&) = default;
};
struct MenuSelect {
  TaskItem item = TaskItem::kStartLearning;
  friend bool operator==(const MenuSelect&, const MenuSelect&) = default;
};
// The user operates a physical switch.
struct SwitchToggle {
  DeviceId device;
  friend bool operator==(const SwitchToggle&, const SwitchToggle&) = default;
};
struct DeviceStateChanged {
  DeviceId device;
  DeviceStatus status;
  friend bool operator==(const DeviceStateChanged&, const DeviceStateChanged&) = default;
};
struct Tick {
  friend bool operator==(const Tick&, const Tick&) = default;
};
// Raised by a workstation agent once per study session.
struct StudyThresholdReached {
  AgentId agent;
  TimeMs elapsed_ms = 0;
  friend bool operator==(const StudyThresholdReached&, const StudyThresholdReached&) = default;
};

}  // namespace ev

using EventKind = std::variant<ev::UserAppeared, ev::Gesture, ev::UserMoved, ev::ZoneEntry, ev::ZoneExit,
                               ev::MenuSelect, ev::SwitchToggle, ev::DeviceStateChanged, ev::Tick,
                               ev::StudyThresholdReached>;

struct Event {
  TimeMs t = 0;
  Seq seq = 0;
  EventKind kind;
  friend bool operator==(const Event&, const Event&) = default;
};

inline constexpr std::string_view kThumbsUp = "thumbs_up";

// Events a human (or the UI on their behalf) may inject at the runtime ingress.
bool is_user_event(const EventKind& kind);

}  // namespace xri
