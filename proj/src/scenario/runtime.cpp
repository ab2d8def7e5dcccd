#include "xri/scenario/runtime.hpp"

#include <chrono>

#include "xri/bus/codec.hpp"
#include "xri/core/json.hpp"

namespace xri::scenario {

using nlohmann::json;
using namespace std::chrono_literals;

namespace {

json kinds_to_json(const std::vector<EventKind>& kinds) {
  json out = json::array();
  for (const auto& k : kinds) out.push_back(bus::event_kind_to_json(k));
  return out;
}

json agents_to_json(const agents::AgentStates& before, const agents::AgentStates& after) {
  auto pair = [](json b, json a) { return json{{"before", std::move(b)}, {"after", std::move(a)}}; };
  return {
      {"guide", pair(agents::to_json(before.guide), agents::to_json(after.guide))},
      {"workstation", pair(agents::to_json(before.workstation), agents::to_json(after.workstation))},
      {"relax", pair(agents::to_json(before.relax), agents::to_json(after.relax))},
      {"meeting", pair(agents::to_json(before.meeting), agents::to_json(after.meeting))},
  };
}

template <class R>
void collect(const R& result, std::vector<Command>& commands, std::vector<EventKind>& emitted) {
  commands.insert(commands.end(), result.commands.begin(), result.commands.end());
  emitted.insert(emitted.end(), result.emitted_events.begin(), result.emitted_events.end());
}

void append_kinds(std::vector<EventKind>& out, const std::vector<Event>& events) {
  for (const auto& e : events) out.push_back(e.kind);
}

constexpr auto kIngressTimeout = 10s;

}  // namespace

json to_json(const TraceEntry& entry) {
  json commands = json::array();
  for (const auto& c : entry.commands) commands.push_back(bus::command_to_json(c));
  json event = bus::event_kind_to_json(entry.event.kind);
  event["t"] = entry.event.t;
  event["seq"] = entry.event.seq;
  return {
      {"t", entry.event.t},
      {"seq", entry.event.seq},
      {"event", std::move(event)},
      {"agents", agents_to_json(entry.before, entry.after)},
      {"commands", std::move(commands)},
      {"derived_events", kinds_to_json(entry.derived_events)},
      {"emitted_events", kinds_to_json(entry.emitted_events)},
      {"device_events", kinds_to_json(entry.device_events)},
  };
}

std::string trace_to_jsonl(const Trace& trace) {
  std::string out;
  for (const auto& entry : trace) {
    out += json_io::canonical(to_json(entry));
    out += '\n';
  }
  return out;
}

Runtime::Runtime(SpaceLayout layout, bus::MessageBus* bus)
    : layout_(std::move(layout)),
      roster_(agents::resolve_roster(layout_)),
      agents_(agents::initial_states(layout_)),
      devices_(devices::DeviceBank::from_layout(layout_)),
      bus_(bus) {
  if (bus_) {
    auto handler = [this](const bus::Message& m) { accept_ingress(m); };
    bus_->subscribe(bus::user_ingress_filter(layout_.space_id), handler);
    bus_->subscribe(bus::ui_ingress_filter(layout_.space_id), handler);
    publish({layout_.space_id, bus::Channel::kState, bus::Category::kUi, "protocol", std::nullopt},
            {{"type", "protocol"}, {"proto_version", bus::kProtoVersion}, {"space_id", layout_.space_id},
             {"t", 0}, {"seq", 0}},
            true);
    publish_state(true, 0);
    bus_->drain();
  }
}

void Runtime::set_time(TimeMs t) {
  if (t > now_) now_ = t;
}

void Runtime::tick() {
  last_tick_ += layout_.config.tick_ms;
  set_time(last_tick_);
  run_to_completion(ev::Tick{});
}

void Runtime::submit(const EventKind& user_event) {
  if (!bus_) {
    run_to_completion(user_event);
    return;
  }
  const Event e{now_, ++ingress_seq_, user_event};
  const auto env = bus::event_envelope(layout_.space_id, e);
  bus_->publish({bus::encode_topic(env.topic), env.payload, false});
  const auto deadline = std::chrono::steady_clock::now() + kIngressTimeout;
  while (true) {
    pump();
    if (seen_ingress_.count(e.seq)) break;
    if (std::chrono::steady_clock::now() > deadline) {
      throw Error(ErrorCode::kTimeout, "ingress", "published input never came back from the bus");
    }
    bus_->wait_for_delivery(100ms);
  }
}

std::size_t Runtime::pump() {
  if (!bus_) return 0;
  bus_->drain();
  std::size_t processed = 0;
  while (!ingress_.empty()) {
    EventKind k = std::move(ingress_.front());
    ingress_.pop_front();
    run_to_completion(std::move(k));
    ++processed;
  }
  return processed;
}

void Runtime::accept_ingress(const bus::Message& m) {
  try {
    const Event e = bus::decode_event(m.payload);
    if (!is_user_event(e.kind) || !admissible(e.kind)) {
      ++ingress_rejected_;
      return;
    }
    // QoS 1 may deliver twice; publishers give every message its own seq.
    if (!seen_ingress_.insert(e.seq).second) {
      ++duplicates_dropped_;
      return;
    }
    ingress_.push_back(e.kind);
  } catch (const Error&) {
    ++ingress_rejected_;
  }
}

bool Runtime::admissible(const EventKind& kind) const {
  if (const auto* t = std::get_if<ev::SwitchToggle>(&kind)) {
    const auto* d = devices_.find(t->device);
    return d && std::holds_alternative<devices::SwitchState>(*d);
  }
  return true;
}

void Runtime::run_to_completion(EventKind first) {
  std::deque<EventKind> pending{std::move(first)};
  while (!pending.empty()) {
    EventKind k = std::move(pending.front());
    pending.pop_front();
    process_one(std::move(k), pending);
  }
  if (bus_) bus_->drain();
}

void Runtime::process_one(EventKind kind, std::deque<EventKind>& pending) {
  TraceEntry entry;
  entry.event = {now_, next_seq_++, std::move(kind)};
  entry.before = agents_;
  const Event& e = entry.event;

  if (const auto* moved = std::get_if<ev::UserMoved>(&e.kind)) {
    const auto next = zone_membership(moved->to, layout_);
    entry.derived_events = derive_zone_events(user_zone_, next);
    user_zone_ = next;
    user_position_ = moved->to;
    if (next && !user_appeared_) {
      user_appeared_ = true;
      entry.derived_events.emplace_back(ev::UserAppeared{});
    }
  } else if (std::holds_alternative<ev::UserAppeared>(e.kind)) {
    user_appeared_ = true;
  } else if (const auto* toggle = std::get_if<ev::SwitchToggle>(&e.kind)) {
    append_kinds(entry.device_events, devices_.toggle(toggle->device, now_));
    append_kinds(entry.device_events, devices_.resample(now_));
  } else if (std::holds_alternative<ev::Tick>(e.kind)) {
    append_kinds(entry.device_events, devices_.resample(now_));
  }

  const auto guide = agents::guide_step(agents_.guide, e, roster_.guide);
  const auto workstation = agents::workstation_step(agents_.workstation, e, now_, roster_.workstation);
  const auto relax = agents::relax_step(agents_.relax, e, roster_.relax);
  const auto meeting = agents::meeting_step(agents_.meeting, e, roster_.meeting);
  agents_ = {guide.new_state, workstation.new_state, relax.new_state, meeting.new_state};
  entry.after = agents_;
  collect(guide, entry.commands, entry.emitted_events);
  collect(workstation, entry.commands, entry.emitted_events);
  collect(relax, entry.commands, entry.emitted_events);
  collect(meeting, entry.commands, entry.emitted_events);

  for (const auto& c : entry.commands) {
    if (c.target.kind != TargetKind::kDevice) continue;
    const auto changed = devices_.apply(c, now_);
    append_kinds(entry.device_events, changed);
    if (!changed.empty()) append_kinds(entry.device_events, devices_.resample(now_));
  }

  pending.insert(pending.end(), entry.derived_events.begin(), entry.derived_events.end());
  pending.insert(pending.end(), entry.emitted_events.begin(), entry.emitted_events.end());
  pending.insert(pending.end(), entry.device_events.begin(), entry.device_events.end());

  if (bus_) publish_entry(entry);
  trace_.push_back(std::move(entry));
  if (observer_) observer_(trace_.back());
}

void Runtime::publish(const bus::Topic& topic, const json& payload, bool retain) {
  bus_->publish({bus::encode_topic(topic), json_io::canonical(payload), retain});
}

void Runtime::publish_entry(const TraceEntry& entry) {
  const Event& e = entry.event;
  // User input is already on the bus; everything else is announced here.
  if (!is_user_event(e.kind)) {
    const auto env = bus::event_envelope(layout_.space_id, e);
    bus_->publish({bus::encode_topic(env.topic), env.payload, false});
  }
  for (const auto& c : entry.commands) {
    const auto env = bus::command_envelope(layout_.space_id, c, e.t, e.seq);
    bus_->publish({bus::encode_topic(env.topic), env.payload, false});
  }
  if (std::holds_alternative<ev::UserMoved>(e.kind) && user_position_) {
    publish({layout_.space_id, bus::Channel::kState, bus::Category::kUser, "position", std::nullopt},
            {{"type", "user_state"},
             {"x", user_position_->x()},
             {"y", user_position_->y()},
             {"zone", user_zone_ ? json(user_zone_->str()) : json(nullptr)},
             {"t", e.t},
             {"seq", e.seq}},
            true);
  }
  publish_state(false, e.seq);
}

void Runtime::publish_state(bool everything, Seq seq) {
  const std::string& space = layout_.space_id;
  auto agent_state = [&](const AgentId& id, std::string_view kind, json state) {
    publish({space, bus::Channel::kState, bus::Category::kAgent, id.str(), std::nullopt},
            {{"type", "agent_state"}, {"agent", id.str()}, {"kind", kind}, {"state", std::move(state)},
             {"t", now_}, {"seq", seq}},
            true);
  };
  const auto& was = published_agents_;
  if (everything || agents_.guide != was.guide) {
    agent_state(roster_.guide.id, "guide", agents::to_json(agents_.guide));
  }
  if (everything || agents_.guide.avatar_position != was.guide.avatar_position) {
    publish({space, bus::Channel::kState, bus::Category::kAvatar, roster_.guide.id.str(), std::nullopt},
            {{"type", "avatar_state"}, {"agent", roster_.guide.id.str()},
             {"position", json_io::to_json(agents_.guide.avatar_position)}, {"t", now_}, {"seq", seq}},
            true);
  }
  if (everything || agents_.workstation != was.workstation) {
    agent_state(roster_.workstation.id, "workstation", agents::to_json(agents_.workstation));
  }
  if (everything || agents_.relax != was.relax) {
    agent_state(roster_.relax.id, "relax", agents::to_json(agents_.relax));
  }
  if (everything || agents_.meeting != was.meeting) {
    agent_state(roster_.meeting.id, "meeting", agents::to_json(agents_.meeting));
  }
  published_agents_ = agents_;

  const auto& states = devices_.states();
  published_devices_.resize(states.size(), DeviceStatus{});
  for (std::size_t i = 0; i < states.size(); ++i) {
    const DeviceStatus status = devices::status_of(states[i]);
    if (!everything && status == published_devices_[i]) continue;
    published_devices_[i] = status;
    const std::string& id = devices::id_of(states[i]).str();
    publish({space, bus::Channel::kState, bus::Category::kDevice, id, std::nullopt},
            {{"type", "device_status"}, {"device", id}, {"status", json_io::to_json(status)}, {"t", now_},
             {"seq", seq}},
            true);
  }
}

Trace run_scenario(const ScenarioScript& script, const SpaceLayout& layout, bus::MessageBus* bus) {
  Runtime rt(apply_overrides(layout, script.overrides), bus);
  for (const auto& step : script.steps) {
    while (rt.next_tick_time() <= step.t) rt.tick();
    rt.set_time(step.t);
    rt.submit(step.event);
  }
  rt.tick();
  return rt.trace();
}

}  // namespace xri::scenario
