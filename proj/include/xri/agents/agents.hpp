#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "xri/core/command.hpp"
#include "xri/core/event.hpp"
#include "xri/core/layout.hpp"

// The four zone agents as pure step functions: (state, event) -> new state,
// commands, and agent-raised events. Nothing here keeps hidden state.
namespace xri::agents {

template <class State>
struct AgentStepResult {
  State new_state;
  std::vector<Command> commands;
  std::vector<EventKind> emitted_events;
};

// ---- guide (the roaming plant avatar) ----

enum class GuidePhase {
  kIdle,
  kWelcoming,
  kMenuOpen,
  kGuidingToLearning,
  kObservingLearning,
  kPromptingRelax,
  kGuidingToRelax,
  kGuidingToMeeting,
  kAtLightSwitch,
};
inline constexpr int kGuidePhaseCount = 9;

std::string_view to_string(GuidePhase phase);
std::optional<GuidePhase> parse_guide_phase(std::string_view s);

struct GuideConfig {
  AgentId id;
  ZoneId learning_zone;
  ZoneId relax_zone;
  ZoneId meeting_zone;
  DeviceId light_switch;
};

struct GuideState {
  GuidePhase phase = GuidePhase::kIdle;
  Place avatar_position = WithUser{};
  // MenuSelect events that arrived with no matching menu on screen.
  std::uint32_t desync_count = 0;

  friend bool operator==(const GuideState&, const GuideState&) = default;
};

AgentStepResult<GuideState> guide_step(const GuideState& s, const Event& e, const GuideConfig& cfg);

// ---- workstation (learning zone study timer) ----

struct WorkstationConfig {
  AgentId id;
  ZoneId zone;
};

struct WorkstationState {
  bool studying = false;
  std::optional<TimeMs> study_started_at;
  TimeMs threshold_ms = 1'500'000;
  bool threshold_fired = false;

  friend bool operator==(const WorkstationState&, const WorkstationState&) = default;
};

AgentStepResult<WorkstationState> workstation_step(const WorkstationState& s, const Event& e, TimeMs now,
                                                   const WorkstationConfig& cfg);

// "study_time HH:MM:SS", whole seconds.
std::string format_study_time(TimeMs elapsed_ms);

// ---- relax (simple reflex scene transform) ----

struct RelaxConfig {
  AgentId id;
  ZoneId zone;
  DeviceId display;
};

struct RelaxState {
  bool scene_active = false;
  friend bool operator==(const RelaxState&, const RelaxState&) = default;
};

AgentStepResult<RelaxState> relax_step(const RelaxState& s, const Event& e, const RelaxConfig& cfg);

// ---- meeting (luminance-gated projector) ----

struct MeetingConfig {
  AgentId id;
  DeviceId projector;
  DeviceId luminance_sensor;
};

struct MeetingState {
  bool armed = false;
  bool projector_on = false;
  double luminance_threshold = 50.0;

  friend bool operator==(const MeetingState&, const MeetingState&) = default;
};

AgentStepResult<MeetingState> meeting_step(const MeetingState& s, const Event& e, const MeetingConfig& cfg);

// ---- wiring against a layout ----

struct AgentRoster {
  GuideConfig guide;
  WorkstationConfig workstation;
  RelaxConfig relax;
  MeetingConfig meeting;
};

struct AgentStates {
  GuideState guide;
  WorkstationState workstation;
  RelaxState relax;
  MeetingState meeting;

  friend bool operator==(const AgentStates&, const AgentStates&) = default;
};

// Requires a layout that passes validate_layout; throws Error(kInvalidLayout) otherwise.
AgentRoster resolve_roster(const SpaceLayout& layout);
AgentStates initial_states(const SpaceLayout& layout);

nlohmann::json to_json(const GuideState& s);
nlohmann::json to_json(const WorkstationState& s);
nlohmann::json to_json(const RelaxState& s);
nlohmann::json to_json(const MeetingState& s);

GuideState guide_state_from_json(const nlohmann::json& j);
WorkstationState workstation_state_from_json(const nlohmann::json& j);
RelaxState relax_state_from_json(const nlohmann::json& j);
MeetingState meeting_state_from_json(const nlohmann::json& j);

}  // namespace xri::agents
