#include "xri/core/layout.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "xri/core/error.hpp"

namespace xri {

using nlohmann::json;

std::string_view to_string(ZoneKind kind) {
  switch (kind) {
    case ZoneKind::kLearning: return "learning";
    case ZoneKind::kRelax: return "relax";
    case ZoneKind::kMeeting: return "meeting";
    case ZoneKind::kNeutral: return "neutral";
  }
  return "?";
}

std::string_view to_string(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::kLight: return "light";
    case DeviceKind::kSwitch: return "switch";
    case DeviceKind::kLuminanceSensor: return "luminance_sensor";
    case DeviceKind::kProjector: return "projector";
    case DeviceKind::kDisplay: return "display";
  }
  return "?";
}

std::string_view to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::kGuide: return "guide";
    case AgentKind::kWorkstation: return "workstation";
    case AgentKind::kRelax: return "relax";
    case AgentKind::kMeeting: return "meeting";
  }
  return "?";
}

namespace {

template <class E>
E parse_enum(const std::string& s, std::initializer_list<E> values, const char* field) {
  for (E v : values) {
    if (to_string(v) == s) return v;
  }
  throw Error(ErrorCode::kParseError, field, "unknown value '" + s + "'");
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::kParseError, key, "missing field");
  return j.at(key);
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return require(j, key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, key, e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get_as<T>(j, key);
}

json position_to_json(const Position& p) { return {{"x", p.x()}, {"y", p.y()}}; }

Position position_from_json(const json& j) { return {get_as<double>(j, "x"), get_as<double>(j, "y")}; }

template <class IdT>
json ids_to_json(const std::vector<IdT>& ids) {
  json out = json::array();
  for (const auto& id : ids) out.push_back(id.str());
  return out;
}

template <class IdT>
std::vector<IdT> ids_from_json(const json& j, const char* key) {
  std::vector<IdT> out;
  if (!j.contains(key)) return out;
  for (const auto& s : get_as<std::vector<std::string>>(j, key)) out.emplace_back(s);
  return out;
}

constexpr std::string_view kRoaming = "roaming";

}  // namespace

const Zone* SpaceLayout::find_zone(const ZoneId& id) const {
  auto it = std::find_if(zones.begin(), zones.end(), [&](const Zone& z) { return z.id == id; });
  return it == zones.end() ? nullptr : &*it;
}

const DeviceDescriptor* SpaceLayout::find_device(const DeviceId& id) const {
  auto it = std::find_if(devices.begin(), devices.end(), [&](const DeviceDescriptor& d) { return d.id == id; });
  return it == devices.end() ? nullptr : &*it;
}

const AgentDescriptor* SpaceLayout::find_agent(const AgentId& id) const {
  auto it = std::find_if(agents.begin(), agents.end(), [&](const AgentDescriptor& a) { return a.id == id; });
  return it == agents.end() ? nullptr : &*it;
}

bool is_valid_identifier(std::string_view id) {
  return !id.empty() && id.find_first_of("/#+") == std::string_view::npos;
}

std::vector<Violation> validate_layout(const SpaceLayout& layout) {
  std::vector<Violation> out;
  auto report = [&](std::string code, std::string subject, std::string message) {
    out.push_back({std::move(code), std::move(subject), std::move(message)});
  };

  if (!is_valid_identifier(layout.space_id)) {
    report("INVALID_IDENTIFIER", layout.space_id, "space_id must be a non-empty topic segment");
  }

  std::set<ZoneId> zone_ids;
  for (const auto& zone : layout.zones) {
    if (zone.id.empty()) {
      report("EMPTY_ZONE_ID", "", "zone without id");
    } else if (!is_valid_identifier(zone.id.str())) {
      report("INVALID_IDENTIFIER", zone.id.str(), "zone id contains a reserved character");
    }
    if (!zone_ids.insert(zone.id).second) {
      report("DUPLICATE_ZONE_ID", zone.id.str(), "zone id used more than once");
    }
    if (!(zone.bounds.min.x() < zone.bounds.max.x() && zone.bounds.min.y() < zone.bounds.max.y())) {
      report("DEGENERATE_BOUNDS", zone.id.str(), "min corner must be strictly below max corner");
    }
  }

  std::set<DeviceId> device_ids;
  for (const auto& device : layout.devices) {
    if (!is_valid_identifier(device.id.str())) {
      report("INVALID_IDENTIFIER", device.id.str(), "device id must be a non-empty topic segment");
    }
    if (!device_ids.insert(device.id).second) {
      report("DUPLICATE_DEVICE_ID", device.id.str(), "device id used more than once");
    }
    if (!layout.find_zone(device.zone)) {
      report("UNRESOLVED_ZONE", device.zone.str(), "device " + device.id.str() + " owned by unknown zone");
    }
    if (device.lux_contribution < 0.0 || device.base_ambient < 0.0) {
      report("INVALID_DEVICE_PARAM", device.id.str(), "lux values must be non-negative");
    }
    for (const auto& controlled : device.controls) {
      const auto* target = layout.find_device(controlled);
      if (!target) {
        report("UNRESOLVED_DEVICE", controlled.str(), "switch " + device.id.str() + " controls unknown device");
      } else if (target->kind != DeviceKind::kLight) {
        report("SWITCH_TARGET_NOT_LIGHT", controlled.str(), "switches control lights only");
      }
    }
  }

  std::set<AgentId> agent_ids;
  std::map<AgentKind, int> kind_counts;
  for (const auto& agent : layout.agents) {
    if (!is_valid_identifier(agent.id.str())) {
      report("INVALID_IDENTIFIER", agent.id.str(), "agent id must be a non-empty topic segment");
    }
    if (!agent_ids.insert(agent.id).second) {
      report("DUPLICATE_AGENT_ID", agent.id.str(), "agent id used more than once");
    }
    if (agent.kind == AgentKind::kGuide) {
      if (agent.zone) report("GUIDE_NOT_ROAMING", agent.id.str(), "the guide agent must be roaming");
      else ++kind_counts[agent.kind];
    } else {
      ++kind_counts[agent.kind];
      if (!agent.zone) {
        report("AGENT_ZONE_REQUIRED", agent.id.str(), "zone agents must own a zone");
      } else if (const Zone* zone = layout.find_zone(*agent.zone); !zone) {
        report("UNRESOLVED_ZONE", agent.zone->str(), "agent " + agent.id.str() + " owned by unknown zone");
      } else if (zone->bound_agent != agent.id) {
        report("BINDING_MISMATCH", agent.id.str(), "zone " + zone->id.str() + " does not bind this agent");
      }
    }
  }
  if (kind_counts[AgentKind::kGuide] != 1) {
    report("GUIDE_COUNT", "", "exactly one roaming guide agent is required");
  }
  for (AgentKind kind : {AgentKind::kWorkstation, AgentKind::kRelax, AgentKind::kMeeting}) {
    if (kind_counts[kind] != 1) {
      report("AGENT_KIND_COUNT", std::string(to_string(kind)), "exactly one agent of this kind is required");
    }
  }

  for (const auto& zone : layout.zones) {
    if (zone.bound_agent) {
      const auto* agent = layout.find_agent(*zone.bound_agent);
      if (!agent) {
        report("UNRESOLVED_AGENT", zone.bound_agent->str(), "zone " + zone.id.str() + " binds unknown agent");
      } else if (agent->zone != zone.id) {
        report("BINDING_MISMATCH", zone.bound_agent->str(), "agent is not owned by zone " + zone.id.str());
      }
    }
    for (const auto& device_id : zone.bound_devices) {
      const auto* device = layout.find_device(device_id);
      if (!device) {
        report("UNRESOLVED_DEVICE", device_id.str(), "zone " + zone.id.str() + " binds unknown device");
      } else if (device->zone != zone.id) {
        report("BINDING_MISMATCH", device_id.str(), "device is not owned by zone " + zone.id.str());
      }
    }
  }

  // Devices the zone agents act through must be bound in their zones.
  auto zone_has = [&](const Zone& zone, DeviceKind kind) {
    return std::any_of(zone.bound_devices.begin(), zone.bound_devices.end(), [&](const DeviceId& id) {
      const auto* d = layout.find_device(id);
      return d && d->kind == kind;
    });
  };
  for (const auto& agent : layout.agents) {
    if (!agent.zone) continue;
    const Zone* zone = layout.find_zone(*agent.zone);
    if (!zone) continue;
    std::vector<DeviceKind> needed;
    if (agent.kind == AgentKind::kRelax) needed = {DeviceKind::kDisplay};
    if (agent.kind == AgentKind::kMeeting) {
      needed = {DeviceKind::kProjector, DeviceKind::kLuminanceSensor, DeviceKind::kSwitch};
    }
    for (DeviceKind kind : needed) {
      if (!zone_has(*zone, kind)) {
        report("MISSING_ROLE_DEVICE", zone->id.str(), "zone needs a " + std::string(to_string(kind)));
      }
    }
  }

  if (layout.config.tick_ms <= 0) report("INVALID_CONFIG", "tick_ms", "tick interval must be positive");
  if (layout.config.study_threshold_ms < 0) {
    report("INVALID_CONFIG", "study_threshold_ms", "threshold must be non-negative");
  }
  if (!(layout.config.luminance_threshold_lux >= 0.0)) {
    report("INVALID_CONFIG", "luminance_threshold_lux", "threshold must be non-negative");
  }
  return out;
}

std::optional<ZoneId> zone_membership(const Position& p, const SpaceLayout& layout) {
  const Zone* best = nullptr;
  double best_area = 0.0;
  for (const auto& zone : layout.zones) {
    if (!zone.bounds.contains(p)) continue;
    const double area = zone.bounds.area();
    if (!best || area < best_area || (area == best_area && zone.id < best->id)) {
      best = &zone;
      best_area = area;
    }
  }
  if (!best) return std::nullopt;
  return best->id;
}

std::vector<EventKind> derive_zone_events(const std::optional<ZoneId>& prev, const std::optional<ZoneId>& next) {
  std::vector<EventKind> out;
  if (prev == next) return out;
  if (prev) out.emplace_back(ev::ZoneExit{*prev});
  if (next) out.emplace_back(ev::ZoneEntry{*next});
  return out;
}

json layout_to_json(const SpaceLayout& layout) {
  json zones = json::array();
  for (const auto& z : layout.zones) {
    json jz = {
        {"zone_id", z.id.str()},
        {"kind", to_string(z.kind)},
        {"bounds", {{"min", position_to_json(z.bounds.min)}, {"max", position_to_json(z.bounds.max)}}},
        {"bound_devices", ids_to_json(z.bound_devices)},
    };
    if (z.bound_agent) jz["bound_agent"] = z.bound_agent->str();
    zones.push_back(std::move(jz));
  }
  json devices = json::array();
  for (const auto& d : layout.devices) {
    json params = json::object();
    switch (d.kind) {
      case DeviceKind::kLight:
        params = {{"lux_contribution", d.lux_contribution}, {"initially_on", d.initially_on}};
        break;
      case DeviceKind::kSwitch:
        params = {{"initially_on", d.initially_on}, {"controls", ids_to_json(d.controls)}};
        break;
      case DeviceKind::kLuminanceSensor:
        params = {{"base_ambient", d.base_ambient}};
        break;
      case DeviceKind::kProjector:
      case DeviceKind::kDisplay:
        break;
    }
    devices.push_back({{"device_id", d.id.str()}, {"kind", to_string(d.kind)}, {"zone", d.zone.str()},
                       {"params", std::move(params)}});
  }
  json agents = json::array();
  for (const auto& a : layout.agents) {
    agents.push_back({{"agent_id", a.id.str()},
                      {"kind", to_string(a.kind)},
                      {"zone", a.zone ? a.zone->str() : std::string(kRoaming)}});
  }
  return {
      {"layout_version", kLayoutVersion},
      {"space_id", layout.space_id},
      {"config",
       {{"study_threshold_ms", layout.config.study_threshold_ms},
        {"luminance_threshold_lux", layout.config.luminance_threshold_lux},
        {"tick_ms", layout.config.tick_ms}}},
      {"zones", std::move(zones)},
      {"devices", std::move(devices)},
      {"agents", std::move(agents)},
  };
}

SpaceLayout layout_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "", "layout must be a JSON object");
  if (get_as<int>(j, "layout_version") != kLayoutVersion) {
    throw Error(ErrorCode::kParseError, "layout_version", "unsupported layout version");
  }
  SpaceLayout layout;
  layout.space_id = get_as<std::string>(j, "space_id");

  if (j.contains("config")) {
    const json& c = j.at("config");
    layout.config.study_threshold_ms = get_or<TimeMs>(c, "study_threshold_ms", layout.config.study_threshold_ms);
    layout.config.luminance_threshold_lux =
        get_or<double>(c, "luminance_threshold_lux", layout.config.luminance_threshold_lux);
    layout.config.tick_ms = get_or<TimeMs>(c, "tick_ms", layout.config.tick_ms);
  }

  for (const json& jz : require(j, "zones")) {
    Zone z;
    z.id = ZoneId(get_as<std::string>(jz, "zone_id"));
    z.kind = parse_enum(get_as<std::string>(jz, "kind"),
                        {ZoneKind::kLearning, ZoneKind::kRelax, ZoneKind::kMeeting, ZoneKind::kNeutral}, "kind");
    const json& bounds = require(jz, "bounds");
    z.bounds = {position_from_json(require(bounds, "min")), position_from_json(require(bounds, "max"))};
    if (jz.contains("bound_agent") && !jz.at("bound_agent").is_null()) {
      z.bound_agent = AgentId(get_as<std::string>(jz, "bound_agent"));
    }
    z.bound_devices = ids_from_json<DeviceId>(jz, "bound_devices");
    layout.zones.push_back(std::move(z));
  }

  for (const json& jd : require(j, "devices")) {
    DeviceDescriptor d;
    d.id = DeviceId(get_as<std::string>(jd, "device_id"));
    d.kind = parse_enum(get_as<std::string>(jd, "kind"),
                        {DeviceKind::kLight, DeviceKind::kSwitch, DeviceKind::kLuminanceSensor,
                         DeviceKind::kProjector, DeviceKind::kDisplay},
                        "kind");
    d.zone = ZoneId(get_as<std::string>(jd, "zone"));
    const json params = jd.contains("params") ? jd.at("params") : json::object();
    d.lux_contribution = get_or<double>(params, "lux_contribution", d.lux_contribution);
    d.base_ambient = get_or<double>(params, "base_ambient", d.base_ambient);
    d.initially_on = get_or<bool>(params, "initially_on", d.initially_on);
    d.controls = ids_from_json<DeviceId>(params, "controls");
    layout.devices.push_back(std::move(d));
  }

  for (const json& ja : require(j, "agents")) {
    AgentDescriptor a;
    a.id = AgentId(get_as<std::string>(ja, "agent_id"));
    a.kind = parse_enum(get_as<std::string>(ja, "kind"),
                        {AgentKind::kGuide, AgentKind::kWorkstation, AgentKind::kRelax, AgentKind::kMeeting}, "kind");
    const auto zone = get_as<std::string>(ja, "zone");
    if (zone != kRoaming) a.zone = ZoneId(zone);
    layout.agents.push_back(std::move(a));
  }
  return layout;
}

SpaceLayout parse_layout(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, "", e.what());
  }
  return layout_from_json(j);
}

SpaceLayout load_layout(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, path.string(), "cannot open layout file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_layout(buf.str());
}

std::string serialize_layout(const SpaceLayout& layout) { return layout_to_json(layout).dump(2) + "\n"; }

}  // namespace xri
