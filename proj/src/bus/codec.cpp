#include "xri/bus/codec.hpp"

#include "xri/core/error.hpp"
#include "xri/core/json.hpp"

namespace xri::bus {

using nlohmann::json;
using namespace xri::json_io;

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

template <class T>
T parsed(std::optional<T> v, const char* key, const std::string& raw) {
  if (!v) throw Error(ErrorCode::kInvalidValue, key, "'" + raw + "'");
  return *v;
}

TaskItem task_field(const json& j, const char* key) {
  const auto raw = string_field(j, key);
  return parsed(parse_task_item(raw), key, raw);
}

void stamp(json& j, TimeMs t, Seq seq) {
  if (t < 0) throw Error(ErrorCode::kInvalidValue, "t", "virtual time must be non-negative");
  j["t"] = t;
  j["seq"] = seq;
}

TimeMs time_field(const json& j) {
  const TimeMs t = int_field(j, "t");
  if (t < 0) throw Error(ErrorCode::kInvalidValue, "t", "virtual time must be non-negative");
  return t;
}

}  // namespace

json parse_payload(std::string_view payload) {
  try {
    json j = json::parse(payload);
    if (!j.is_object()) throw Error(ErrorCode::kInvalidValue, "", "payload must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, "", std::string("payload is not JSON: ") + e.what());
  }
}

json event_kind_to_json(const EventKind& kind) {
  return std::visit(
      Overloaded{
          [](const ev::UserAppeared&) -> json { return {{"type", "user_appeared"}}; },
          [](const ev::Gesture& g) -> json { return {{"type", "gesture"}, {"gesture", g.name}}; },
          [](const ev::UserMoved& m) -> json { return {{"type", "user_moved"}, {"x", m.to.x()}, {"y", m.to.y()}}; },
          [](const ev::ZoneEntry& z) -> json { return {{"type", "zone_entry"}, {"zone", z.zone.str()}}; },
          [](const ev::ZoneExit& z) -> json { return {{"type", "zone_exit"}, {"zone", z.zone.str()}}; },
          [](const ev::MenuSelect& m) -> json { return {{"type", "menu_select"}, {"item", to_string(m.item)}}; },
          [](const ev::SwitchToggle& s) -> json { return {{"type", "switch_toggle"}, {"device", s.device.str()}}; },
          [](const ev::DeviceStateChanged& d) -> json {
            return {{"type", "device_state"}, {"device", d.device.str()}, {"status", to_json(d.status)}};
          },
          [](const ev::Tick&) -> json { return {{"type", "tick"}}; },
          [](const ev::StudyThresholdReached& s) -> json {
            return {{"type", "study_threshold_reached"}, {"agent", s.agent.str()}, {"elapsed_ms", s.elapsed_ms}};
          },
      },
      kind);
}

EventKind event_kind_from_json(const json& j) {
  const std::string type = string_field(j, "type");
  if (type == "user_appeared") return ev::UserAppeared{};
  if (type == "gesture") return ev::Gesture{string_field(j, "gesture")};
  if (type == "user_moved") return ev::UserMoved{position_from_json(j)};
  if (type == "zone_entry") return ev::ZoneEntry{ZoneId(string_field(j, "zone"))};
  if (type == "zone_exit") return ev::ZoneExit{ZoneId(string_field(j, "zone"))};
  if (type == "menu_select") return ev::MenuSelect{task_field(j, "item")};
  if (type == "switch_toggle") return ev::SwitchToggle{DeviceId(string_field(j, "device"))};
  if (type == "device_state") {
    return ev::DeviceStateChanged{DeviceId(string_field(j, "device")), device_status_from_json(field(j, "status"))};
  }
  if (type == "tick") return ev::Tick{};
  if (type == "study_threshold_reached") {
    return ev::StudyThresholdReached{AgentId(string_field(j, "agent")), int_field(j, "elapsed_ms")};
  }
  throw Error(ErrorCode::kUnknownType, type);
}

json command_to_json(const Command& c) {
  json j = std::visit(
      Overloaded{
          [](const act::SetPower& a) -> json { return {{"on", a.on}}; },
          [](const act::ShowMessage& a) -> json { return {{"text", a.text}}; },
          [](const act::ShowIndicator& a) -> json {
            json out = {{"symbol", a.symbol}};
            if (a.zone) out["zone"] = a.zone->str();
            return out;
          },
          [](const act::ShowMenu& a) -> json {
            json items = json::array();
            for (TaskItem i : a.items) items.push_back(to_string(i));
            return {{"items", std::move(items)}};
          },
          [](const act::MoveTo& a) -> json { return {{"destination", to_json(a.destination)}}; },
          [](const act::Wave&) -> json { return json::object(); },
          [](const act::SceneTransform& a) -> json { return {{"theme", to_string(a.theme)}}; },
          [](const act::SetMode& a) -> json { return {{"mode", to_string(a.mode)}}; },
      },
      c.action);
  j["type"] = action_name(c.action);
  j["issuer"] = c.issuer.str();
  j["target"] = c.target.id;
  j["target_kind"] = c.target.kind == TargetKind::kDevice ? "device" : "avatar";
  return j;
}

Command command_from_json(const json& j) {
  Command c;
  c.issuer = AgentId(string_field(j, "issuer"));
  const std::string target_kind = string_field(j, "target_kind");
  if (target_kind != "device" && target_kind != "avatar") {
    throw Error(ErrorCode::kInvalidValue, "target_kind", "'" + target_kind + "'");
  }
  c.target = {target_kind == "device" ? TargetKind::kDevice : TargetKind::kAvatar, string_field(j, "target")};

  const std::string type = string_field(j, "type");
  if (type == "set_power") {
    c.action = act::SetPower{bool_field(j, "on")};
  } else if (type == "show_message") {
    c.action = act::ShowMessage{string_field(j, "text")};
  } else if (type == "show_indicator") {
    act::ShowIndicator a{string_field(j, "symbol"), std::nullopt};
    if (j.contains("zone")) a.zone = ZoneId(string_field(j, "zone"));
    c.action = std::move(a);
  } else if (type == "show_menu") {
    const json& items = field(j, "items");
    if (!items.is_array()) throw Error(ErrorCode::kInvalidValue, "items", "expected an array");
    act::ShowMenu menu;
    for (const json& item : items) {
      const std::string raw = item.is_string() ? item.get<std::string>() : item.dump();
      menu.items.push_back(parsed(parse_task_item(raw), "items", raw));
    }
    c.action = std::move(menu);
  } else if (type == "move_to") {
    c.action = act::MoveTo{place_from_json(field(j, "destination"))};
  } else if (type == "wave") {
    c.action = act::Wave{};
  } else if (type == "scene_transform") {
    const auto raw = string_field(j, "theme");
    c.action = act::SceneTransform{parsed(parse_theme(raw), "theme", raw)};
  } else if (type == "set_mode") {
    const auto raw = string_field(j, "mode");
    c.action = act::SetMode{parsed(parse_projector_mode(raw), "mode", raw)};
  } else {
    throw Error(ErrorCode::kUnknownType, type);
  }
  return c;
}

std::string encode_event(const Event& e) {
  json j = event_kind_to_json(e.kind);
  stamp(j, e.t, e.seq);
  return canonical(j);
}

Event decode_event(std::string_view payload) {
  const json j = parse_payload(payload);
  // Presence of the common fields is checked before the type dispatch.
  const TimeMs t = time_field(j);
  const Seq seq = uint_field(j, "seq");
  return {t, seq, event_kind_from_json(j)};
}

std::string encode_command(const Command& c, TimeMs t, Seq seq) {
  json j = command_to_json(c);
  stamp(j, t, seq);
  return canonical(j);
}

StampedCommand decode_command(std::string_view payload) {
  const json j = parse_payload(payload);
  const TimeMs t = time_field(j);
  const Seq seq = uint_field(j, "seq");
  return {t, seq, command_from_json(j)};
}

Topic event_topic(const std::string& space_id, const EventKind& kind) {
  auto make = [&](Category cat, std::string subject, std::optional<std::string> leaf = std::nullopt) {
    return Topic{space_id, Channel::kEvent, cat, std::move(subject), std::move(leaf)};
  };
  return std::visit(Overloaded{
                        [&](const ev::UserAppeared&) { return make(Category::kUser, "appeared"); },
                        [&](const ev::Gesture&) { return make(Category::kUser, "gesture"); },
                        [&](const ev::UserMoved&) { return make(Category::kUser, "moved"); },
                        [&](const ev::SwitchToggle&) { return make(Category::kUser, "toggle"); },
                        [&](const ev::MenuSelect&) { return make(Category::kUi, "menu"); },
                        [&](const ev::ZoneEntry& z) { return make(Category::kZone, z.zone.str(), "entry"); },
                        [&](const ev::ZoneExit& z) { return make(Category::kZone, z.zone.str(), "exit"); },
                        [&](const ev::DeviceStateChanged& d) { return make(Category::kDevice, d.device.str()); },
                        [&](const ev::Tick&) { return make(Category::kAgent, "clock", "tick"); },
                        [&](const ev::StudyThresholdReached& s) {
                          return make(Category::kAgent, s.agent.str(), "study_threshold");
                        },
                    },
                    kind);
}

Topic command_topic(const std::string& space_id, const Command& c) {
  return {space_id, Channel::kCmd, c.target.kind == TargetKind::kDevice ? Category::kDevice : Category::kAvatar,
          c.target.id, std::nullopt};
}

Envelope event_envelope(const std::string& space_id, const Event& e) {
  return {event_topic(space_id, e.kind), encode_event(e), false};
}

Envelope command_envelope(const std::string& space_id, const Command& c, TimeMs t, Seq seq) {
  return {command_topic(space_id, c), encode_command(c, t, seq), false};
}

std::string user_ingress_filter(const std::string& space_id) {
  return std::string(kTopicRoot) + "/" + space_id + "/event/user/#";
}

std::string ui_ingress_filter(const std::string& space_id) {
  return std::string(kTopicRoot) + "/" + space_id + "/event/ui/#";
}

}  // namespace xri::bus
