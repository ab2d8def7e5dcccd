#include "xri/core/command.hpp"
#include "xri/core/event.hpp"

namespace xri {

bool is_user_event(const EventKind& kind) {
  return std::holds_alternative<ev::UserAppeared>(kind) || std::holds_alternative<ev::Gesture>(kind) ||
         std::holds_alternative<ev::UserMoved>(kind) || std::holds_alternative<ev::MenuSelect>(kind) ||
         std::holds_alternative<ev::SwitchToggle>(kind);
}

std::string_view action_name(const Action& action) {
  struct Visitor {
    std::string_view operator()(const act::SetPower&) const { return "set_power"; }
    std::string_view operator()(const act::ShowMessage&) const { return "show_message"; }
    std::string_view operator()(const act::ShowIndicator&) const { return "show_indicator"; }
    std::string_view operator()(const act::ShowMenu&) const { return "show_menu"; }
    std::string_view operator()(const act::MoveTo&) const { return "move_to"; }
    std::string_view operator()(const act::Wave&) const { return "wave"; }
    std::string_view operator()(const act::SceneTransform&) const { return "scene_transform"; }
    std::string_view operator()(const act::SetMode&) const { return "set_mode"; }
  };
  return std::visit(Visitor{}, action);
}

}  // namespace xri
