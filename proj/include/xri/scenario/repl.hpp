#pragma once

#include <atomic>
#include <iosfwd>
#include <string>

#include "xri/scenario/runtime.hpp"

namespace xri::scenario {

struct ReplOptions {
  // Map wall-clock time onto virtual ticks instead of waiting for `tick N`.
  bool realtime = false;
  bool prompt = false;
};

// Line commands: gesture NAME | move X Y | enter ZONE | select ITEM |
// toggle SWITCH | appear | tick [N] | state | help | quit.
// Returns the process exit status.
int interactive_repl(Runtime& rt, std::istream& in, std::ostream& out, const ReplOptions& options = {});

// One human-readable block per trace entry.
std::string describe(const TraceEntry& entry);
std::string describe_state(const Runtime& rt);

struct ServeOptions {
  // 0 disables the HTTP endpoint; -1 binds any free port.
  int http_port = 8080;
  std::string http_host = "0.0.0.0";
  std::atomic<int>* bound_port = nullptr;
};

// Headless runtime for bus peers such as the browser console: ticks on the
// wall clock, processes ingress from the bus, and serves the layout at
// GET /layout.json. Runs until `stop` becomes true.
int serve(Runtime& rt, const ServeOptions& options, const std::atomic<bool>& stop, std::ostream& log);

}  // namespace xri::scenario
