#include <algorithm>

#include "xri/agents/agents.hpp"
#include "xri/core/error.hpp"
#include "xri/core/json.hpp"

namespace xri::agents {

using nlohmann::json;

namespace {

const AgentDescriptor& agent_of_kind(const SpaceLayout& layout, AgentKind kind) {
  auto it = std::find_if(layout.agents.begin(), layout.agents.end(),
                         [&](const AgentDescriptor& a) { return a.kind == kind; });
  if (it == layout.agents.end()) {
    throw Error(ErrorCode::kInvalidLayout, std::string(to_string(kind)), "no agent of this kind");
  }
  return *it;
}

const Zone& zone_of(const SpaceLayout& layout, const AgentDescriptor& agent) {
  const Zone* zone = agent.zone ? layout.find_zone(*agent.zone) : nullptr;
  if (!zone) throw Error(ErrorCode::kInvalidLayout, agent.id.str(), "agent has no zone");
  return *zone;
}

DeviceId device_in(const SpaceLayout& layout, const Zone& zone, DeviceKind kind) {
  for (const auto& id : zone.bound_devices) {
    const auto* d = layout.find_device(id);
    if (d && d->kind == kind) return id;
  }
  throw Error(ErrorCode::kInvalidLayout, zone.id.str(), "zone lacks a " + std::string(to_string(kind)));
}

}  // namespace

AgentRoster resolve_roster(const SpaceLayout& layout) {
  const auto& guide = agent_of_kind(layout, AgentKind::kGuide);
  const auto& workstation = agent_of_kind(layout, AgentKind::kWorkstation);
  const auto& relax = agent_of_kind(layout, AgentKind::kRelax);
  const auto& meeting = agent_of_kind(layout, AgentKind::kMeeting);
  const Zone& learning_zone = zone_of(layout, workstation);
  const Zone& relax_zone = zone_of(layout, relax);
  const Zone& meeting_zone = zone_of(layout, meeting);

  AgentRoster roster;
  roster.guide = {guide.id, learning_zone.id, relax_zone.id, meeting_zone.id,
                  device_in(layout, meeting_zone, DeviceKind::kSwitch)};
  roster.workstation = {workstation.id, learning_zone.id};
  roster.relax = {relax.id, relax_zone.id, device_in(layout, relax_zone, DeviceKind::kDisplay)};
  roster.meeting = {meeting.id, device_in(layout, meeting_zone, DeviceKind::kProjector),
                    device_in(layout, meeting_zone, DeviceKind::kLuminanceSensor)};
  return roster;
}

AgentStates initial_states(const SpaceLayout& layout) {
  AgentStates s;
  // The avatar waits in the first neutral zone (the corridor) until summoned.
  auto home = std::find_if(layout.zones.begin(), layout.zones.end(),
                           [](const Zone& z) { return z.kind == ZoneKind::kNeutral; });
  if (home != layout.zones.end()) s.guide.avatar_position = home->id;
  s.workstation.threshold_ms = layout.config.study_threshold_ms;
  s.meeting.luminance_threshold = layout.config.luminance_threshold_lux;
  return s;
}

json to_json(const GuideState& s) {
  return {{"phase", to_string(s.phase)},
          {"avatar", json_io::to_json(s.avatar_position)},
          {"desync_count", s.desync_count}};
}

json to_json(const WorkstationState& s) {
  return {{"studying", s.studying},
          {"study_started_at", s.study_started_at ? json(*s.study_started_at) : json(nullptr)},
          {"threshold_ms", s.threshold_ms},
          {"threshold_fired", s.threshold_fired}};
}

json to_json(const RelaxState& s) { return {{"scene_active", s.scene_active}}; }

json to_json(const MeetingState& s) {
  return {{"armed", s.armed}, {"projector_on", s.projector_on}, {"luminance_threshold", s.luminance_threshold}};
}

GuideState guide_state_from_json(const json& j) {
  GuideState s;
  auto phase = parse_guide_phase(json_io::string_field(j, "phase"));
  if (!phase) throw Error(ErrorCode::kInvalidValue, "phase");
  s.phase = *phase;
  s.avatar_position = json_io::place_from_json(json_io::field(j, "avatar"));
  s.desync_count = static_cast<std::uint32_t>(json_io::uint_field(j, "desync_count"));
  return s;
}

WorkstationState workstation_state_from_json(const json& j) {
  WorkstationState s;
  s.studying = json_io::bool_field(j, "studying");
  if (const json& started = json_io::field(j, "study_started_at"); !started.is_null()) {
    s.study_started_at = json_io::int_field(j, "study_started_at");
  }
  s.threshold_ms = json_io::int_field(j, "threshold_ms");
  s.threshold_fired = json_io::bool_field(j, "threshold_fired");
  return s;
}

RelaxState relax_state_from_json(const json& j) { return {json_io::bool_field(j, "scene_active")}; }

MeetingState meeting_state_from_json(const json& j) {
  return {json_io::bool_field(j, "armed"), json_io::bool_field(j, "projector_on"),
          json_io::number_field(j, "luminance_threshold")};
}

}  // namespace xri::agents
