#include "xri/scenario/trace.hpp"

#include <set>
#include <sstream>

#include "xri/agents/agents.hpp"
#include "xri/bus/codec.hpp"
#include "xri/core/error.hpp"
#include "xri/core/json.hpp"

namespace xri::scenario {

using nlohmann::json;

namespace {

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::optional<std::string> first_difference(const json& a, const json& b, const std::string& at) {
  if (a.type() != b.type()) {
    // 5 and 5.0 parse to different number types; compare such pairs by value.
    if (a.is_number() && b.is_number() && a.get<double>() == b.get<double>()) return std::nullopt;
    return at;
  }
  if (a.is_object()) {
    std::set<std::string> keys;
    for (const auto& [k, v] : a.items()) keys.insert(k);
    for (const auto& [k, v] : b.items()) keys.insert(k);
    for (const auto& k : keys) {
      const std::string path = at + "/" + escape_pointer(k);
      if (!a.contains(k) || !b.contains(k)) return path;
      if (auto d = first_difference(a.at(k), b.at(k), path)) return d;
    }
    return std::nullopt;
  }
  if (a.is_array()) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto d = first_difference(a[i], b[i], at + "/" + std::to_string(i))) return d;
    }
    if (a.size() != b.size()) return at + "/" + std::to_string(n);
    return std::nullopt;
  }
  if (a != b) return at;
  return std::nullopt;
}

Seq seq_of(const json& entry, std::size_t index) {
  if (entry.is_object() && entry.contains("seq") && entry.at("seq").is_number_unsigned()) {
    return entry.at("seq").get<Seq>();
  }
  return index;
}

}  // namespace

std::vector<json> parse_trace(std::string_view jsonl) {
  std::vector<json> out;
  std::istringstream in{std::string(jsonl)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no), e.what());
    }
  }
  return out;
}

std::optional<Divergence> diff_traces(const std::vector<json>& a, const std::vector<json>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto pointer = first_difference(a[i], b[i], "")) {
      std::string path = pointer->substr(1);
      path = path.substr(0, path.find('/'));
      return Divergence{seq_of(a[i], i), path, "/" + std::to_string(i) + *pointer};
    }
  }
  if (a.size() != b.size()) {
    const auto& longer = a.size() > b.size() ? a : b;
    return Divergence{seq_of(longer[n], n), "<length>", "/" + std::to_string(n)};
  }
  return std::nullopt;
}

std::vector<TraceIssue> validate_trace(const std::vector<json>& trace, const SpaceLayout& layout) {
  std::vector<TraceIssue> issues;
  const auto roster = agents::resolve_roster(layout);
  TimeMs last_t = 0;

  for (std::size_t i = 0; i < trace.size(); ++i) {
    const json& entry = trace[i];
    const Seq seq = seq_of(entry, i);
    auto fail = [&](std::string message) { issues.push_back({seq, std::move(message)}); };
    try {
      if (seq != i) fail("seq is not dense: expected " + std::to_string(i));
      const Event e{json_io::int_field(entry, "t"), seq, bus::event_kind_from_json(json_io::field(entry, "event"))};
      if (e.t < last_t) fail("time went backwards");
      last_t = e.t;

      const json& a = json_io::field(entry, "agents");
      auto before = [&](const char* role) { return json_io::field(json_io::field(a, role), "before"); };
      auto after = [&](const char* role) { return json_io::field(json_io::field(a, role), "after"); };

      const auto g = agents::guide_step(agents::guide_state_from_json(before("guide")), e, roster.guide);
      const auto w = agents::workstation_step(agents::workstation_state_from_json(before("workstation")), e, e.t,
                                              roster.workstation);
      const auto r = agents::relax_step(agents::relax_state_from_json(before("relax")), e, roster.relax);
      const auto m = agents::meeting_step(agents::meeting_state_from_json(before("meeting")), e, roster.meeting);

      if (agents::guide_state_from_json(after("guide")) != g.new_state) fail("guide state_after not licensed");
      if (agents::workstation_state_from_json(after("workstation")) != w.new_state) {
        fail("workstation state_after not licensed");
      }
      if (agents::relax_state_from_json(after("relax")) != r.new_state) fail("relax state_after not licensed");
      if (agents::meeting_state_from_json(after("meeting")) != m.new_state) {
        fail("meeting state_after not licensed");
      }

      std::vector<Command> expected;
      std::vector<EventKind> raised;
      for (const auto* step_cmds : {&g.commands, &w.commands, &r.commands, &m.commands}) {
        expected.insert(expected.end(), step_cmds->begin(), step_cmds->end());
      }
      for (const auto* step_events : {&g.emitted_events, &w.emitted_events, &r.emitted_events, &m.emitted_events}) {
        raised.insert(raised.end(), step_events->begin(), step_events->end());
      }
      std::vector<Command> recorded;
      for (const json& c : json_io::field(entry, "commands")) recorded.push_back(bus::command_from_json(c));
      if (recorded != expected) fail("commands are not licensed by the recorded transitions");
      std::vector<EventKind> recorded_raised;
      for (const json& k : json_io::field(entry, "emitted_events")) {
        recorded_raised.push_back(bus::event_kind_from_json(k));
      }
      if (recorded_raised != raised) fail("agent-raised events are not licensed by the recorded transitions");
    } catch (const Error& err) {
      fail(std::string("unreadable entry: ") + err.what());
    }
  }
  return issues;
}

}  // namespace xri::scenario
