#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "xri/core/layout.hpp"
#include "xri/core/types.hpp"

namespace xri::scenario {

// One JSON object per non-empty line. Throws Error(kParseError) naming the line.
std::vector<nlohmann::json> parse_trace(std::string_view jsonl);

struct Divergence {
  Seq seq = 0;          // seq of the first differing entry (its index when absent)
  std::string path;     // top-level field of that entry, or "<length>"
  std::string pointer;  // JSON pointer to the first differing value

  friend bool operator==(const Divergence&, const Divergence&) = default;
};

// nullopt when the traces are structurally equal.
std::optional<Divergence> diff_traces(const std::vector<nlohmann::json>& a, const std::vector<nlohmann::json>& b);

struct TraceIssue {
  Seq seq = 0;
  std::string message;
};

// Re-runs every agent step from its recorded state_before and checks that
// the recorded state_after, commands and raised events are exactly what the
// transition produces. Also checks seq density and time monotonicity.
std::vector<TraceIssue> validate_trace(const std::vector<nlohmann::json>& trace, const SpaceLayout& layout);

}  // namespace xri::scenario
