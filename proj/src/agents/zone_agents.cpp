#include <cstdio>

#include "xri/agents/agents.hpp"

namespace xri::agents {

std::string format_study_time(TimeMs elapsed_ms) {
  const TimeMs total = elapsed_ms / 1000;
  char buf[48];
  std::snprintf(buf, sizeof buf, "study_time %02lld:%02lld:%02lld", static_cast<long long>(total / 3600),
                static_cast<long long>(total / 60 % 60), static_cast<long long>(total % 60));
  return buf;
}

AgentStepResult<WorkstationState> workstation_step(const WorkstationState& s, const Event& e, TimeMs now,
                                                   const WorkstationConfig& cfg) {
  AgentStepResult<WorkstationState> r{s, {}, {}};
  WorkstationState& n = r.new_state;

  if (const auto* z = std::get_if<ev::ZoneEntry>(&e.kind)) {
    if (z->zone == cfg.zone && !s.studying) {
      n.studying = true;
      n.study_started_at = now;
      n.threshold_fired = false;
    }
  } else if (const auto* x = std::get_if<ev::ZoneExit>(&e.kind)) {
    if (x->zone == cfg.zone && s.studying) {
      n.studying = false;
      n.study_started_at.reset();
      n.threshold_fired = false;
    }
  } else if (std::holds_alternative<ev::Tick>(e.kind) && s.studying) {
    const TimeMs elapsed = now - *s.study_started_at;
    r.commands.push_back({cfg.id, Target::avatar(cfg.id), act::ShowMessage{format_study_time(elapsed)}});
    if (!s.threshold_fired && elapsed >= s.threshold_ms) {
      n.threshold_fired = true;
      r.emitted_events.emplace_back(ev::StudyThresholdReached{cfg.id, elapsed});
    }
  }
  return r;
}

AgentStepResult<RelaxState> relax_step(const RelaxState& s, const Event& e, const RelaxConfig& cfg) {
  AgentStepResult<RelaxState> r{s, {}, {}};
  auto transform = [&](Theme theme) {
    r.commands.push_back({cfg.id, Target::device(cfg.display), act::SceneTransform{theme}});
  };
  if (const auto* z = std::get_if<ev::ZoneEntry>(&e.kind); z && z->zone == cfg.zone && !s.scene_active) {
    r.new_state.scene_active = true;
    transform(Theme::kParticles);
  } else if (const auto* x = std::get_if<ev::ZoneExit>(&e.kind); x && x->zone == cfg.zone && s.scene_active) {
    r.new_state.scene_active = false;
    transform(Theme::kNeutral);
  }
  return r;
}

AgentStepResult<MeetingState> meeting_step(const MeetingState& s, const Event& e, const MeetingConfig& cfg) {
  AgentStepResult<MeetingState> r{s, {}, {}};
  MeetingState& n = r.new_state;
  auto to_projector = [&](Action a) { r.commands.push_back({cfg.id, Target::device(cfg.projector), std::move(a)}); };

  if (const auto* m = std::get_if<ev::MenuSelect>(&e.kind)) {
    if (m->item == TaskItem::kStartMeeting) n.armed = true;
    return r;
  }
  const auto* d = std::get_if<ev::DeviceStateChanged>(&e.kind);
  if (!d || d->device != cfg.luminance_sensor) return r;
  const auto* reading = std::get_if<LuminanceStatus>(&d->status);
  if (!reading) return r;

  if (s.armed && !s.projector_on && reading->lux < s.luminance_threshold) {
    to_projector(act::SetPower{true});
    to_projector(act::SetMode{ProjectorMode::kMeeting});
    n.projector_on = true;
  } else if (s.projector_on && reading->lux >= s.luminance_threshold) {
    // Lights are back: the meeting is over.
    to_projector(act::SetPower{false});
    n.projector_on = false;
    n.armed = false;
  }
  return r;
}

}  // namespace xri::agents
