#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xri/agents/agents.hpp"
#include "xri/bus/message_bus.hpp"
#include "xri/bus/topic.hpp"
#include "xri/devices/devices.hpp"
#include "xri/scenario/script.hpp"

namespace xri::scenario {

struct TraceEntry {
  Event event;
  agents::AgentStates before;
  agents::AgentStates after;
  std::vector<Command> commands;
  std::vector<EventKind> derived_events;  // zone entry/exit and user appearance
  std::vector<EventKind> emitted_events;  // raised by agents
  std::vector<EventKind> device_events;   // device changes this event caused
};

using Trace = std::vector<TraceEntry>;

nlohmann::json to_json(const TraceEntry& entry);
std::string trace_to_jsonl(const Trace& trace);

// The event loop. One event is processed by every agent (guide, workstation,
// relax, meeting) before anything it caused is dequeued; follow-up events
// run before the next external input is accepted.
//
// With a bus, user input takes the ingress path: it is published on its
// event topic, delivered back through the subscription, de-duplicated by
// payload seq, and re-sequenced here. Without one, input is processed
// directly. Either way the trace is identical.
class Runtime {
 public:
  explicit Runtime(SpaceLayout layout, bus::MessageBus* bus = nullptr);

  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  // Injects a user action at the current time and runs it to completion.
  void submit(const EventKind& user_event);
  // Advances to the next tick boundary and processes the tick.
  void tick();
  // Moves the clock forward without ticking; `t` must not precede now().
  void set_time(TimeMs t);
  // Processes ingress messages that other bus peers have published.
  std::size_t pump();

  TimeMs now() const noexcept { return now_; }
  TimeMs next_tick_time() const noexcept { return last_tick_ + layout_.config.tick_ms; }
  const SpaceLayout& layout() const noexcept { return layout_; }
  const agents::AgentStates& agents() const noexcept { return agents_; }
  const agents::AgentRoster& roster() const noexcept { return roster_; }
  const devices::DeviceBank& devices() const noexcept { return devices_; }
  const std::optional<ZoneId>& user_zone() const noexcept { return user_zone_; }
  const Trace& trace() const noexcept { return trace_; }
  std::size_t duplicates_dropped() const noexcept { return duplicates_dropped_; }
  std::size_t ingress_rejected() const noexcept { return ingress_rejected_; }

  void on_entry(std::function<void(const TraceEntry&)> observer) { observer_ = std::move(observer); }

 private:
  void run_to_completion(EventKind first);
  void process_one(EventKind kind, std::deque<EventKind>& pending);
  void accept_ingress(const bus::Message& m);
  bool admissible(const EventKind& kind) const;
  void publish_entry(const TraceEntry& entry);
  void publish_state(bool everything, Seq seq);
  void publish(const bus::Topic& topic, const nlohmann::json& payload, bool retain);

  SpaceLayout layout_;
  agents::AgentRoster roster_;
  agents::AgentStates agents_;
  devices::DeviceBank devices_;
  bus::MessageBus* bus_;

  TimeMs now_ = 0;
  TimeMs last_tick_ = 0;
  Seq next_seq_ = 0;
  Seq ingress_seq_ = 0;
  std::optional<ZoneId> user_zone_;
  std::optional<Position> user_position_;
  bool user_appeared_ = false;

  std::deque<EventKind> ingress_;
  std::set<Seq> seen_ingress_;
  std::size_t duplicates_dropped_ = 0;
  std::size_t ingress_rejected_ = 0;

  agents::AgentStates published_agents_;
  std::vector<DeviceStatus> published_devices_;

  Trace trace_;
  std::function<void(const TraceEntry&)> observer_;
};

// Steps and ticks merged in time order; a tick runs before a step at the same
// time, as it would for input typed after `tick`. Ends with the first tick
// after the last step.
Trace run_scenario(const ScenarioScript& script, const SpaceLayout& layout, bus::MessageBus* bus = nullptr);

}  // namespace xri::scenario
