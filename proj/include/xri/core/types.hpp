#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace xri {

// Virtual time in integer milliseconds.
using TimeMs = std::int64_t;
using Seq = std::uint64_t;

template <class Tag>
class Id {
 public:
  Id() = default;
  explicit Id(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const Id&, const Id&) = default;
  friend bool operator==(const Id&, const Id&) = default;

 private:
  std::string value_;
};

using ZoneId = Id<struct ZoneIdTag>;
using DeviceId = Id<struct DeviceIdTag>;
using AgentId = Id<struct AgentIdTag>;

// A point on the floorplan, in meters. Construction rejects NaN and infinities.
class Position {
 public:
  Position() = default;
  Position(double x, double y);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

  friend bool operator==(const Position&, const Position&) = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
};

// The fixed task set offered by the guide's menu.
enum class TaskItem { kStartLearning, kStartRelaxing, kStartMeeting };

enum class Theme { kNeutral, kParticles };
enum class ProjectorMode { kOff, kMeeting };
enum class SwitchPosition { kOff, kOn };

std::string_view to_string(TaskItem item);
std::string_view to_string(Theme theme);
std::string_view to_string(ProjectorMode mode);
std::string_view to_string(SwitchPosition position);

std::optional<TaskItem> parse_task_item(std::string_view s);
std::optional<Theme> parse_theme(std::string_view s);
std::optional<ProjectorMode> parse_projector_mode(std::string_view s);
std::optional<SwitchPosition> parse_switch_position(std::string_view s);

// Where an avatar is, or is asked to go.
struct WithUser {
  friend bool operator==(const WithUser&, const WithUser&) = default;
};
using Place = std::variant<WithUser, ZoneId, DeviceId, Position>;

}  // namespace xri
