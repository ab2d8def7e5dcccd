#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xri/core/error.hpp"
#include "xri/core/event.hpp"
#include "xri/core/layout.hpp"

namespace xri::scenario {

// Splits on whitespace; `#` starts a comment.
std::vector<std::string> tokenize(std::string_view line);

// User action verbs shared by scripts and the REPL:
//   appear | gesture NAME | move X Y | enter ZONE | select ITEM | toggle SWITCH
// Throws Error(kParseError), Error(kUnknownZone) or Error(kUnknownDevice).
EventKind parse_user_action(const std::vector<std::string>& tokens, const SpaceLayout& layout);

struct ConfigOverrides {
  std::optional<TimeMs> study_threshold_ms;
  std::optional<double> luminance_threshold_lux;
  std::optional<TimeMs> tick_ms;
};

SpaceLayout apply_overrides(SpaceLayout layout, const ConfigOverrides& overrides);

struct ScriptStep {
  TimeMs t = 0;
  EventKind event;
  int line = 0;
};

struct ScenarioScript {
  std::optional<std::string> space_id;
  std::optional<std::string> layout_ref;
  ConfigOverrides overrides;
  std::vector<ScriptStep> steps;
};

struct ScriptIssue {
  ErrorCode code;
  int line = 0;
  std::size_t step = 0;  // 1-based; 0 for header lines
  std::string message;
};

class ScriptError : public Error {
 public:
  explicit ScriptError(std::vector<ScriptIssue> issues);
  const std::vector<ScriptIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ScriptIssue> issues_;
};

// The `layout` header line, read without a layout at hand.
std::optional<std::string> peek_layout_ref(std::string_view bytes);

// Parses and validates against `layout`; collects every violation into a ScriptError.
ScenarioScript load_script(std::string_view bytes, const SpaceLayout& layout);

}  // namespace xri::scenario
