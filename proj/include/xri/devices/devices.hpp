#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "xri/core/command.hpp"
#include "xri/core/event.hpp"
#include "xri/core/layout.hpp"

// Simulated room hardware. Real drivers would sit behind the same surface:
// accept Commands, publish DeviceStateChanged for each observable change.
namespace xri::devices {

struct LightState {
  DeviceId id;
  bool powered = false;
  double lux_contribution = 300.0;
  friend bool operator==(const LightState&, const LightState&) = default;
};

struct SwitchState {
  DeviceId id;
  SwitchPosition position = SwitchPosition::kOn;
  std::vector<DeviceId> controlled_light_ids;
  friend bool operator==(const SwitchState&, const SwitchState&) = default;
};

// Stand-in for the webcam light detector: a scalar lux reading.
struct LuminanceSensorState {
  DeviceId id;
  double base_ambient = 5.0;
  double last_reading = 5.0;
  friend bool operator==(const LuminanceSensorState&, const LuminanceSensorState&) = default;
};

struct ProjectorState {
  DeviceId id;
  bool powered = false;
  ProjectorMode mode = ProjectorMode::kOff;  // kMeeting implies powered
  friend bool operator==(const ProjectorState&, const ProjectorState&) = default;
};

struct DisplayState {
  DeviceId id;
  Theme scene = Theme::kNeutral;
  friend bool operator==(const DisplayState&, const DisplayState&) = default;
};

using DeviceState = std::variant<LightState, SwitchState, LuminanceSensorState, ProjectorState, DisplayState>;

const DeviceId& id_of(const DeviceState& s);
DeviceStatus status_of(const DeviceState& s);

struct ApplyResult {
  DeviceState state;
  std::vector<Event> events;  // seq left at 0 for the runtime to assign
};

// One DeviceStateChanged per observable change; idempotent commands emit nothing.
// Throws Error(kUnsupportedAction) when the action does not fit the device kind.
ApplyResult apply_command(const DeviceState& s, const Command& c, TimeMs t);

double sample_luminance(const LuminanceSensorState& sensor, std::span<const LightState> lights);

struct ToggleResult {
  SwitchState state;
  std::vector<LightState> lights;
  std::vector<Event> events;  // changed lights in controlled order, then the switch
};

ToggleResult toggle_switch(const SwitchState& s, std::vector<LightState> lights, TimeMs t);

// All devices of one space, in layout order. Each luminance sensor observes
// the lights owned by its own zone.
class DeviceBank {
 public:
  static DeviceBank from_layout(const SpaceLayout& layout);

  const std::vector<DeviceState>& states() const noexcept { return states_; }
  const DeviceState* find(const DeviceId& id) const;

  std::vector<Event> apply(const Command& c, TimeMs t);
  std::vector<Event> toggle(const DeviceId& switch_id, TimeMs t);

  // Re-reads every sensor; returns events for readings that changed.
  std::vector<Event> resample(TimeMs t);

 private:
  DeviceState* find_mutable(const DeviceId& id);
  std::vector<LightState> lights_in(const std::vector<DeviceId>& ids) const;

  std::vector<DeviceState> states_;
  std::vector<ZoneId> zones_;  // owning zone per entry of states_
};

nlohmann::json to_json(const DeviceState& s);

}  // namespace xri::devices
