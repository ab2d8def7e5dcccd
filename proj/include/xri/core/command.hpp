#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xri/core/types.hpp"

namespace xri {

namespace act {

struct SetPower {
  bool on = false;
  friend bool operator==(const SetPower&, const SetPower&) = default;
};
struct ShowMessage {
  std::string text;
  friend bool operator==(const ShowMessage&, const ShowMessage&) = default;
};
struct ShowIndicator {
  std::string symbol;
  std::optional<ZoneId> zone;
  friend bool operator==(const ShowIndicator&, const ShowIndicator&) = default;
};
struct ShowMenu {
  std::vector<TaskItem> items;
  friend bool operator==(const ShowMenu&, const ShowMenu&) = default;
};
struct MoveTo {
  Place destination;
  friend bool operator==(const MoveTo&, const MoveTo&) = default;
};
struct Wave {
  friend bool operator==(const Wave&, const Wave&) = default;
};
struct SceneTransform {
  Theme theme = Theme::kNeutral;
  friend bool operator==(const SceneTransform&, const SceneTransform&) = default;
};
struct SetMode {
  ProjectorMode mode = ProjectorMode::kOff;
  friend bool operator==(const SetMode&, const SetMode&) = default;
};

}  // namespace act

using Action = std::variant<act::SetPower, act::ShowMessage, act::ShowIndicator, act::ShowMenu, act::MoveTo,
                            act::Wave, act::SceneTransform, act::SetMode>;

enum class TargetKind { kDevice, kAvatar };

struct Target {
  TargetKind kind = TargetKind::kDevice;
  std::string id;

  static Target device(const DeviceId& d) { return {TargetKind::kDevice, d.str()}; }
  static Target avatar(const AgentId& a) { return {TargetKind::kAvatar, a.str()}; }

  friend bool operator==(const Target&, const Target&) = default;
};

struct Command {
  AgentId issuer;
  Target target;
  Action action;
  friend bool operator==(const Command&, const Command&) = default;
};

std::string_view action_name(const Action& action);

}  // namespace xri
