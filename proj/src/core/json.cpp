#include "xri/core/json.hpp"

#include "xri/core/error.hpp"

namespace xri::json_io {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidValue, key, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::kMissingField, key);
  return *it;
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw Error(ErrorCode::kInvalidValue, key, "expected a string");
  return v.get<std::string>();
}

bool bool_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_boolean()) throw Error(ErrorCode::kInvalidValue, key, "expected a boolean");
  return v.get<bool>();
}

double number_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw Error(ErrorCode::kInvalidValue, key, "expected a number");
  return v.get<double>();
}

std::int64_t int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw Error(ErrorCode::kInvalidValue, key, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t uint_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned()) throw Error(ErrorCode::kInvalidValue, key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

json to_json(const Position& p) { return {{"x", p.x()}, {"y", p.y()}}; }

Position position_from_json(const json& j) { return {number_field(j, "x"), number_field(j, "y")}; }

json to_json(const Place& place) {
  struct Visitor {
    json operator()(const WithUser&) const { return {{"kind", "with_user"}}; }
    json operator()(const ZoneId& z) const { return {{"kind", "zone"}, {"id", z.str()}}; }
    json operator()(const DeviceId& d) const { return {{"kind", "device"}, {"id", d.str()}}; }
    json operator()(const Position& p) const { return {{"kind", "position"}, {"x", p.x()}, {"y", p.y()}}; }
  };
  return std::visit(Visitor{}, place);
}

Place place_from_json(const json& j) {
  const std::string kind = string_field(j, "kind");
  if (kind == "with_user") return WithUser{};
  if (kind == "zone") return ZoneId(string_field(j, "id"));
  if (kind == "device") return DeviceId(string_field(j, "id"));
  if (kind == "position") return position_from_json(j);
  throw Error(ErrorCode::kInvalidValue, "kind", "unknown place kind '" + kind + "'");
}

json to_json(const DeviceStatus& status) {
  struct Visitor {
    json operator()(const LightStatus& s) const { return {{"kind", "light"}, {"powered", s.powered}}; }
    json operator()(const SwitchStatus& s) const {
      return {{"kind", "switch"}, {"position", to_string(s.position)}};
    }
    json operator()(const LuminanceStatus& s) const { return {{"kind", "luminance_sensor"}, {"lux", s.lux}}; }
    json operator()(const ProjectorStatus& s) const {
      return {{"kind", "projector"}, {"powered", s.powered}, {"mode", to_string(s.mode)}};
    }
    json operator()(const DisplayStatus& s) const { return {{"kind", "display"}, {"scene", to_string(s.scene)}}; }
  };
  return std::visit(Visitor{}, status);
}

namespace {

template <class T>
T parsed(std::optional<T> v, const char* key) {
  if (!v) throw Error(ErrorCode::kInvalidValue, key);
  return *v;
}

}  // namespace

DeviceStatus device_status_from_json(const json& j) {
  const std::string kind = string_field(j, "kind");
  if (kind == "light") return LightStatus{bool_field(j, "powered")};
  if (kind == "switch") return SwitchStatus{parsed(parse_switch_position(string_field(j, "position")), "position")};
  if (kind == "luminance_sensor") return LuminanceStatus{number_field(j, "lux")};
  if (kind == "projector") {
    return ProjectorStatus{bool_field(j, "powered"), parsed(parse_projector_mode(string_field(j, "mode")), "mode")};
  }
  if (kind == "display") return DisplayStatus{parsed(parse_theme(string_field(j, "scene")), "scene")};
  throw Error(ErrorCode::kInvalidValue, "kind", "unknown device kind '" + kind + "'");
}

std::string canonical(const json& j) { return j.dump(); }

}  // namespace xri::json_io
