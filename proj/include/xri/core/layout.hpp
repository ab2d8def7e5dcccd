#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "xri/core/event.hpp"
#include "xri/core/types.hpp"

namespace xri {

enum class ZoneKind { kLearning, kRelax, kMeeting, kNeutral };
enum class DeviceKind { kLight, kSwitch, kLuminanceSensor, kProjector, kDisplay };
enum class AgentKind { kGuide, kWorkstation, kRelax, kMeeting };

std::string_view to_string(ZoneKind kind);
std::string_view to_string(DeviceKind kind);
std::string_view to_string(AgentKind kind);

// Axis-aligned, boundary-inclusive rectangle.
struct Rect {
  Position min;
  Position max;

  double area() const { return (max.x() - min.x()) * (max.y() - min.y()); }
  bool contains(const Position& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() && p.y() <= max.y();
  }
  Position center() const { return {(min.x() + max.x()) / 2.0, (min.y() + max.y()) / 2.0}; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Zone {
  ZoneId id;
  Rect bounds;
  ZoneKind kind = ZoneKind::kNeutral;
  std::optional<AgentId> bound_agent;
  std::vector<DeviceId> bound_devices;

  friend bool operator==(const Zone&, const Zone&) = default;
};

struct DeviceDescriptor {
  DeviceId id;
  DeviceKind kind = DeviceKind::kLight;
  ZoneId zone;
  // Parameters; each applies to the kinds named.
  double lux_contribution = 300.0;   // light
  double base_ambient = 5.0;         // luminance_sensor
  bool initially_on = false;         // light, switch
  std::vector<DeviceId> controls;    // switch

  friend bool operator==(const DeviceDescriptor&, const DeviceDescriptor&) = default;
};

struct AgentDescriptor {
  AgentId id;
  AgentKind kind = AgentKind::kGuide;
  std::optional<ZoneId> zone;  // nullopt = roaming

  friend bool operator==(const AgentDescriptor&, const AgentDescriptor&) = default;
};

struct RuntimeConfig {
  TimeMs study_threshold_ms = 1'500'000;
  double luminance_threshold_lux = 50.0;
  TimeMs tick_ms = 1'000;

  friend bool operator==(const RuntimeConfig&, const RuntimeConfig&) = default;
};

inline constexpr int kLayoutVersion = 1;

struct SpaceLayout {
  std::string space_id;
  std::vector<Zone> zones;
  std::vector<DeviceDescriptor> devices;
  std::vector<AgentDescriptor> agents;
  RuntimeConfig config;

  const Zone* find_zone(const ZoneId& id) const;
  const DeviceDescriptor* find_device(const DeviceId& id) const;
  const AgentDescriptor* find_agent(const AgentId& id) const;

  friend bool operator==(const SpaceLayout&, const SpaceLayout&) = default;
};

struct Violation {
  std::string code;     // e.g. UNRESOLVED_DEVICE
  std::string subject;  // offending identifier
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Every invariant violation of the layout; empty means valid.
std::vector<Violation> validate_layout(const SpaceLayout& layout);

// Containing zone, preferring the smallest area and then the smallest id.
std::optional<ZoneId> zone_membership(const Position& p, const SpaceLayout& layout);

std::vector<EventKind> derive_zone_events(const std::optional<ZoneId>& prev, const std::optional<ZoneId>& next);

// True when `id` may be used as a topic segment: non-empty, none of / # +.
bool is_valid_identifier(std::string_view id);

// JSON form, keys sorted. Structural problems throw Error(kParseError).
nlohmann::json layout_to_json(const SpaceLayout& layout);
SpaceLayout layout_from_json(const nlohmann::json& j);
SpaceLayout parse_layout(std::string_view text);
SpaceLayout load_layout(const std::filesystem::path& path);
std::string serialize_layout(const SpaceLayout& layout);

}  // namespace xri
