#include "xri/scenario/script.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace xri::scenario {

namespace {

std::optional<double> to_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (*end != '\0' || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<TimeMs> to_int(const std::string& s) {
  TimeMs v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

void expect_args(const std::vector<std::string>& tokens, std::size_t n, const char* usage) {
  if (tokens.size() != n + 1) throw Error(ErrorCode::kParseError, tokens[0], std::string("usage: ") + usage);
}

std::string summarize(const std::vector<ScriptIssue>& issues) {
  std::ostringstream out;
  out << issues.size() << " script issue(s); first at line " << issues.front().line << ": "
      << issues.front().message;
  return out.str();
}

}  // namespace

std::vector<std::string> tokenize(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

EventKind parse_user_action(const std::vector<std::string>& tokens, const SpaceLayout& layout) {
  if (tokens.empty()) throw Error(ErrorCode::kParseError, "", "empty action");
  const std::string& verb = tokens[0];

  if (verb == "appear") {
    expect_args(tokens, 0, "appear");
    return ev::UserAppeared{};
  }
  if (verb == "gesture") {
    expect_args(tokens, 1, "gesture NAME");
    return ev::Gesture{tokens[1]};
  }
  if (verb == "move") {
    expect_args(tokens, 2, "move X Y");
    const auto x = to_double(tokens[1]);
    const auto y = to_double(tokens[2]);
    if (!x || !y) throw Error(ErrorCode::kParseError, verb, "coordinates must be numbers");
    return ev::UserMoved{Position(*x, *y)};
  }
  if (verb == "enter") {
    expect_args(tokens, 1, "enter ZONE");
    const Zone* zone = layout.find_zone(ZoneId(tokens[1]));
    if (!zone) throw Error(ErrorCode::kUnknownZone, tokens[1]);
    return ev::UserMoved{zone->bounds.center()};
  }
  if (verb == "select") {
    expect_args(tokens, 1, "select start_learning|start_relaxing|start_meeting");
    const auto item = parse_task_item(tokens[1]);
    if (!item) throw Error(ErrorCode::kParseError, tokens[1], "unknown menu item");
    return ev::MenuSelect{*item};
  }
  if (verb == "toggle") {
    expect_args(tokens, 1, "toggle SWITCH");
    const auto* device = layout.find_device(DeviceId(tokens[1]));
    if (!device || device->kind != DeviceKind::kSwitch) throw Error(ErrorCode::kUnknownDevice, tokens[1]);
    return ev::SwitchToggle{device->id};
  }
  throw Error(ErrorCode::kParseError, verb, "unknown action");
}

SpaceLayout apply_overrides(SpaceLayout layout, const ConfigOverrides& o) {
  if (o.study_threshold_ms) layout.config.study_threshold_ms = *o.study_threshold_ms;
  if (o.luminance_threshold_lux) layout.config.luminance_threshold_lux = *o.luminance_threshold_lux;
  if (o.tick_ms) layout.config.tick_ms = *o.tick_ms;
  return layout;
}

ScriptError::ScriptError(std::vector<ScriptIssue> issues)
    : Error(issues.front().code,
            issues.front().step ? "step " + std::to_string(issues.front().step)
                                : "line " + std::to_string(issues.front().line),
            summarize(issues)),
      issues_(std::move(issues)) {}

std::optional<std::string> peek_layout_ref(std::string_view bytes) {
  std::istringstream in{std::string(bytes)};
  for (std::string line; std::getline(in, line);) {
    const auto tokens = tokenize(line);
    if (tokens.size() == 2 && tokens[0] == "layout") return tokens[1];
    if (!tokens.empty() && tokens[0] == "at") break;
  }
  return std::nullopt;
}

ScenarioScript load_script(std::string_view bytes, const SpaceLayout& layout) {
  ScenarioScript script;
  std::vector<ScriptIssue> issues;
  std::istringstream in{std::string(bytes)};
  int line_no = 0;
  bool in_steps = false;

  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::size_t step_no = script.steps.size() + 1;
    auto issue = [&](ErrorCode code, std::string message, std::size_t step = 0) {
      issues.push_back({code, line_no, step, std::move(message)});
    };

    if (tokens[0] != "at") {
      if (in_steps) {
        issue(ErrorCode::kParseError, "header line '" + tokens[0] + "' after the first step");
      } else if (tokens[0] == "space" && tokens.size() == 2) {
        script.space_id = tokens[1];
        if (tokens[1] != layout.space_id) {
          issue(ErrorCode::kInvalidValue, "script space '" + tokens[1] + "' does not match layout '" +
                                              layout.space_id + "'");
        }
      } else if (tokens[0] == "layout" && tokens.size() == 2) {
        script.layout_ref = tokens[1];
      } else if (tokens[0] == "set" && tokens.size() == 3) {
        const std::string& key = tokens[1];
        if (key == "study_threshold_ms" && to_int(tokens[2])) {
          script.overrides.study_threshold_ms = to_int(tokens[2]);
        } else if (key == "tick_ms" && to_int(tokens[2]) && *to_int(tokens[2]) > 0) {
          script.overrides.tick_ms = to_int(tokens[2]);
        } else if (key == "luminance_threshold_lux" && to_double(tokens[2])) {
          script.overrides.luminance_threshold_lux = to_double(tokens[2]);
        } else {
          issue(ErrorCode::kParseError, "bad setting '" + key + " " + tokens[2] + "'");
        }
      } else {
        issue(ErrorCode::kParseError, "unrecognized line '" + line + "'");
      }
      continue;
    }

    in_steps = true;
    const auto t = tokens.size() >= 3 ? to_int(tokens[1]) : std::nullopt;
    if (!t || *t < 0) {
      issue(ErrorCode::kParseError, "expected 'at T ACTION ...' with T a non-negative integer", step_no);
      script.steps.push_back({0, ev::Tick{}, line_no});  // keeps step numbering aligned
      continue;
    }
    if (!script.steps.empty() && *t < script.steps.back().t) {
      issue(ErrorCode::kNonMonotoneTime,
            "step time " + std::to_string(*t) + " precedes " + std::to_string(script.steps.back().t), step_no);
    }
    try {
      script.steps.push_back({*t, parse_user_action({tokens.begin() + 2, tokens.end()}, layout), line_no});
    } catch (const Error& e) {
      issue(e.code(), e.what(), step_no);
      script.steps.push_back({*t, ev::Tick{}, line_no});
    }
  }

  if (!issues.empty()) throw ScriptError(std::move(issues));
  return script;
}

}  // namespace xri::scenario
