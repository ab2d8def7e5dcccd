#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "xri/core/event.hpp"
#include "xri/core/types.hpp"

// JSON forms of the shared value types. Decoders throw Error(kMissingField)
// or Error(kInvalidValue) with the offending field name as detail.
namespace xri::json_io {

using nlohmann::json;

const json& field(const json& j, const char* key);
std::string string_field(const json& j, const char* key);
bool bool_field(const json& j, const char* key);
double number_field(const json& j, const char* key);
std::int64_t int_field(const json& j, const char* key);
std::uint64_t uint_field(const json& j, const char* key);

json to_json(const Position& p);
Position position_from_json(const json& j);

json to_json(const Place& place);
Place place_from_json(const json& j);

json to_json(const DeviceStatus& status);
DeviceStatus device_status_from_json(const json& j);

std::string canonical(const json& j);

}  // namespace xri::json_io
