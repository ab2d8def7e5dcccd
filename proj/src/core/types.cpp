#include "xri/core/types.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "xri/core/error.hpp"

namespace xri {

Position::Position(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw Error(ErrorCode::kInvalidValue, "position", "coordinates must be finite");
  }
}

namespace {

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s) {
  for (const auto& [value, name] : table) {
    if (name == s) return value;
  }
  return std::nullopt;
}

template <class E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E e) {
  for (const auto& [value, name] : table) {
    if (value == e) return name;
  }
  return "?";
}

constexpr std::array<std::pair<TaskItem, std::string_view>, 3> kTaskNames{{
    {TaskItem::kStartLearning, "start_learning"},
    {TaskItem::kStartRelaxing, "start_relaxing"},
    {TaskItem::kStartMeeting, "start_meeting"},
}};
constexpr std::array<std::pair<Theme, std::string_view>, 2> kThemeNames{{
    {Theme::kNeutral, "neutral"},
    {Theme::kParticles, "particles"},
}};
constexpr std::array<std::pair<ProjectorMode, std::string_view>, 2> kModeNames{{
    {ProjectorMode::kOff, "off"},
    {ProjectorMode::kMeeting, "meeting"},
}};
constexpr std::array<std::pair<SwitchPosition, std::string_view>, 2> kSwitchNames{{
    {SwitchPosition::kOff, "off"},
    {SwitchPosition::kOn, "on"},
}};

}  // namespace

std::string_view to_string(TaskItem item) { return name_of(kTaskNames, item); }
std::string_view to_string(Theme theme) { return name_of(kThemeNames, theme); }
std::string_view to_string(ProjectorMode mode) { return name_of(kModeNames, mode); }
std::string_view to_string(SwitchPosition position) { return name_of(kSwitchNames, position); }

std::optional<TaskItem> parse_task_item(std::string_view s) { return lookup(kTaskNames, s); }
std::optional<Theme> parse_theme(std::string_view s) { return lookup(kThemeNames, s); }
std::optional<ProjectorMode> parse_projector_mode(std::string_view s) { return lookup(kModeNames, s); }
std::optional<SwitchPosition> parse_switch_position(std::string_view s) {
  return lookup(kSwitchNames, s);
}

}  // namespace xri
