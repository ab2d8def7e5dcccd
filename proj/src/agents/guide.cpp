#include <array>
#include <utility>

#include "xri/agents/agents.hpp"

namespace xri::agents {

namespace {

constexpr std::array<std::pair<GuidePhase, std::string_view>, kGuidePhaseCount> kPhaseNames{{
    {GuidePhase::kIdle, "idle"},
    {GuidePhase::kWelcoming, "welcoming"},
    {GuidePhase::kMenuOpen, "menu_open"},
    {GuidePhase::kGuidingToLearning, "guiding_to_learning"},
    {GuidePhase::kObservingLearning, "observing_learning"},
    {GuidePhase::kPromptingRelax, "prompting_relax"},
    {GuidePhase::kGuidingToRelax, "guiding_to_relax"},
    {GuidePhase::kGuidingToMeeting, "guiding_to_meeting"},
    {GuidePhase::kAtLightSwitch, "at_light_switch"},
}};

const std::vector<TaskItem> kFullMenu{TaskItem::kStartLearning, TaskItem::kStartRelaxing, TaskItem::kStartMeeting};

class GuideStepper {
 public:
  GuideStepper(const GuideState& s, const GuideConfig& cfg) : cfg_(cfg) { result_.new_state = s; }

  AgentStepResult<GuideState> step(const Event& e) {
    const GuidePhase phase = result_.new_state.phase;

    if (std::holds_alternative<ev::UserAppeared>(e.kind)) {
      if (phase == GuidePhase::kIdle) {
        enter(GuidePhase::kWelcoming);
        say(act::ShowMessage{"welcome"});
        say(act::ShowIndicator{std::string(kThumbsUp), std::nullopt});
      }
    } else if (const auto* g = std::get_if<ev::Gesture>(&e.kind)) {
      // Summonable from anywhere; cancels whatever guidance was in progress.
      if (g->name == kThumbsUp) {
        enter(GuidePhase::kMenuOpen);
        say(act::Wave{});
        move_to(WithUser{});
        say(act::ShowMenu{kFullMenu});
      }
    } else if (const auto* m = std::get_if<ev::MenuSelect>(&e.kind)) {
      on_select(phase, m->item);
    } else if (const auto* z = std::get_if<ev::ZoneEntry>(&e.kind)) {
      if (phase == GuidePhase::kGuidingToLearning && z->zone == cfg_.learning_zone) {
        enter(GuidePhase::kObservingLearning);
      } else if (phase == GuidePhase::kGuidingToMeeting && z->zone == cfg_.meeting_zone) {
        enter(GuidePhase::kAtLightSwitch);
      }
    } else if (const auto* d = std::get_if<ev::DeviceStateChanged>(&e.kind)) {
      if (phase == GuidePhase::kGuidingToMeeting && d->device == cfg_.light_switch) {
        enter(GuidePhase::kAtLightSwitch);
      }
    } else if (std::holds_alternative<ev::StudyThresholdReached>(e.kind)) {
      if (phase == GuidePhase::kObservingLearning) {
        enter(GuidePhase::kPromptingRelax);
        move_to(WithUser{});
        say(act::ShowMenu{{TaskItem::kStartRelaxing}});
      }
    }
    return std::move(result_);
  }

 private:
  void on_select(GuidePhase phase, TaskItem item) {
    if (phase == GuidePhase::kMenuOpen) {
      switch (item) {
        case TaskItem::kStartLearning:
          enter(GuidePhase::kGuidingToLearning);
          move_to(cfg_.learning_zone);
          say(act::ShowIndicator{"here", cfg_.learning_zone});
          return;
        case TaskItem::kStartRelaxing:
          enter(GuidePhase::kGuidingToRelax);
          move_to(cfg_.relax_zone);
          return;
        case TaskItem::kStartMeeting:
          enter(GuidePhase::kGuidingToMeeting);
          move_to(cfg_.light_switch);
          say(act::ShowMessage{"turn_off_light"});
          return;
      }
    }
    if (phase == GuidePhase::kPromptingRelax && item == TaskItem::kStartRelaxing) {
      enter(GuidePhase::kGuidingToRelax);
      move_to(cfg_.relax_zone);
      return;
    }
    // The UI offered no such choice: ignore, but make it visible.
    ++result_.new_state.desync_count;
  }

  void enter(GuidePhase phase) { result_.new_state.phase = phase; }

  void say(Action action) {
    result_.commands.push_back({cfg_.id, Target::avatar(cfg_.id), std::move(action)});
  }

  void move_to(Place place) {
    result_.new_state.avatar_position = place;
    say(act::MoveTo{std::move(place)});
  }

  const GuideConfig& cfg_;
  AgentStepResult<GuideState> result_;
};

}  // namespace

std::string_view to_string(GuidePhase phase) {
  for (const auto& [p, name] : kPhaseNames) {
    if (p == phase) return name;
  }
  return "?";
}

std::optional<GuidePhase> parse_guide_phase(std::string_view s) {
  for (const auto& [p, name] : kPhaseNames) {
    if (name == s) return p;
  }
  return std::nullopt;
}

AgentStepResult<GuideState> guide_step(const GuideState& s, const Event& e, const GuideConfig& cfg) {
  return GuideStepper(s, cfg).step(e);
}

}  // namespace xri::agents
