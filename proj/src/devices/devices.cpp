#include "xri/devices/devices.hpp"

#include <algorithm>

#include "xri/core/error.hpp"
#include "xri/core/json.hpp"

namespace xri::devices {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

Event changed(const DeviceState& s, TimeMs t) { return {t, 0, ev::DeviceStateChanged{id_of(s), status_of(s)}}; }

[[noreturn]] void unsupported(const DeviceState& s, const Command& c) {
  throw Error(ErrorCode::kUnsupportedAction, id_of(s).str(),
              std::string(action_name(c.action)) + " is not supported by this device");
}

}  // namespace

const DeviceId& id_of(const DeviceState& s) {
  return std::visit([](const auto& d) -> const DeviceId& { return d.id; }, s);
}

DeviceStatus status_of(const DeviceState& s) {
  return std::visit(Overloaded{
                        [](const LightState& d) -> DeviceStatus { return LightStatus{d.powered}; },
                        [](const SwitchState& d) -> DeviceStatus { return SwitchStatus{d.position}; },
                        [](const LuminanceSensorState& d) -> DeviceStatus { return LuminanceStatus{d.last_reading}; },
                        [](const ProjectorState& d) -> DeviceStatus { return ProjectorStatus{d.powered, d.mode}; },
                        [](const DisplayState& d) -> DeviceStatus { return DisplayStatus{d.scene}; },
                    },
                    s);
}

ApplyResult apply_command(const DeviceState& s, const Command& c, TimeMs t) {
  if (c.target.kind != TargetKind::kDevice || c.target.id != id_of(s).str()) {
    throw Error(ErrorCode::kInvalidValue, c.target.id, "command is addressed to another target");
  }
  DeviceState next = s;

  if (auto* light = std::get_if<LightState>(&next)) {
    const auto* power = std::get_if<act::SetPower>(&c.action);
    if (!power) unsupported(s, c);
    light->powered = power->on;
  } else if (auto* projector = std::get_if<ProjectorState>(&next)) {
    if (const auto* power = std::get_if<act::SetPower>(&c.action)) {
      projector->powered = power->on;
      if (!power->on) projector->mode = ProjectorMode::kOff;
    } else if (const auto* mode = std::get_if<act::SetMode>(&c.action)) {
      // An unpowered projector cannot enter a mode.
      if (projector->powered) projector->mode = mode->mode;
    } else {
      unsupported(s, c);
    }
  } else if (auto* display = std::get_if<DisplayState>(&next)) {
    const auto* scene = std::get_if<act::SceneTransform>(&c.action);
    if (!scene) unsupported(s, c);
    display->scene = scene->theme;
  } else {
    // Switches are operated by hand; sensors only report.
    unsupported(s, c);
  }

  ApplyResult r{next, {}};
  if (status_of(next) != status_of(s)) r.events.push_back(changed(next, t));
  return r;
}

double sample_luminance(const LuminanceSensorState& sensor, std::span<const LightState> lights) {
  double lux = sensor.base_ambient;
  for (const auto& light : lights) {
    if (light.powered) lux += light.lux_contribution;
  }
  return lux;
}

ToggleResult toggle_switch(const SwitchState& s, std::vector<LightState> lights, TimeMs t) {
  ToggleResult r{s, std::move(lights), {}};
  r.state.position = s.position == SwitchPosition::kOn ? SwitchPosition::kOff : SwitchPosition::kOn;
  const bool powered = r.state.position == SwitchPosition::kOn;
  for (const auto& id : s.controlled_light_ids) {
    for (auto& light : r.lights) {
      if (light.id == id && light.powered != powered) {
        light.powered = powered;
        r.events.push_back(changed(light, t));
      }
    }
  }
  r.events.push_back(changed(r.state, t));
  return r;
}

DeviceBank DeviceBank::from_layout(const SpaceLayout& layout) {
  DeviceBank bank;
  for (const auto& d : layout.devices) {
    switch (d.kind) {
      case DeviceKind::kLight:
        bank.states_.emplace_back(LightState{d.id, d.initially_on, d.lux_contribution});
        break;
      case DeviceKind::kSwitch:
        bank.states_.emplace_back(
            SwitchState{d.id, d.initially_on ? SwitchPosition::kOn : SwitchPosition::kOff, d.controls});
        break;
      case DeviceKind::kLuminanceSensor:
        bank.states_.emplace_back(LuminanceSensorState{d.id, d.base_ambient, d.base_ambient});
        break;
      case DeviceKind::kProjector:
        bank.states_.emplace_back(ProjectorState{d.id});
        break;
      case DeviceKind::kDisplay:
        bank.states_.emplace_back(DisplayState{d.id});
        break;
    }
    bank.zones_.push_back(d.zone);
  }
  bank.resample(0);
  return bank;
}

const DeviceState* DeviceBank::find(const DeviceId& id) const {
  auto it = std::find_if(states_.begin(), states_.end(), [&](const DeviceState& s) { return id_of(s) == id; });
  return it == states_.end() ? nullptr : &*it;
}

DeviceState* DeviceBank::find_mutable(const DeviceId& id) { return const_cast<DeviceState*>(find(id)); }

std::vector<LightState> DeviceBank::lights_in(const std::vector<DeviceId>& ids) const {
  std::vector<LightState> out;
  for (const auto& id : ids) {
    if (const auto* s = find(id)) {
      if (const auto* light = std::get_if<LightState>(s)) out.push_back(*light);
    }
  }
  return out;
}

std::vector<Event> DeviceBank::apply(const Command& c, TimeMs t) {
  DeviceState* s = find_mutable(DeviceId(c.target.id));
  if (!s) throw Error(ErrorCode::kUnknownDevice, c.target.id);
  auto r = apply_command(*s, c, t);
  *s = std::move(r.state);
  return std::move(r.events);
}

std::vector<Event> DeviceBank::toggle(const DeviceId& switch_id, TimeMs t) {
  DeviceState* s = find_mutable(switch_id);
  auto* sw = s ? std::get_if<SwitchState>(s) : nullptr;
  if (!sw) throw Error(ErrorCode::kUnknownDevice, switch_id.str(), "not a switch");
  auto r = toggle_switch(*sw, lights_in(sw->controlled_light_ids), t);
  *sw = std::move(r.state);
  for (auto& light : r.lights) *find_mutable(light.id) = std::move(light);
  return std::move(r.events);
}

std::vector<Event> DeviceBank::resample(TimeMs t) {
  std::vector<Event> out;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    auto* sensor = std::get_if<LuminanceSensorState>(&states_[i]);
    if (!sensor) continue;
    std::vector<LightState> lights;
    for (std::size_t k = 0; k < states_.size(); ++k) {
      if (const auto* light = std::get_if<LightState>(&states_[k]); light && zones_[k] == zones_[i]) {
        lights.push_back(*light);
      }
    }
    const double lux = sample_luminance(*sensor, lights);
    if (lux != sensor->last_reading) {
      sensor->last_reading = lux;
      out.push_back(changed(*sensor, t));
    }
  }
  return out;
}

nlohmann::json to_json(const DeviceState& s) {
  nlohmann::json j = json_io::to_json(status_of(s));
  j["device_id"] = id_of(s).str();
  return j;
}

}  // namespace xri::devices
