#include "xri/scenario/repl.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <memory>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "xri/bus/codec.hpp"
#include "xri/core/json.hpp"

namespace xri::scenario {

using namespace std::chrono_literals;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::string_view kUsage =
    "commands: gesture NAME | move X Y | enter ZONE | select ITEM | toggle SWITCH | appear | tick [N] | state | "
    "help | quit";

bool is_quiet_tick(const TraceEntry& entry) {
  return std::holds_alternative<ev::Tick>(entry.event.kind) && entry.emitted_events.empty() &&
         entry.device_events.empty() && entry.derived_events.empty();
}

std::string last_display(const TraceEntry& entry) {
  for (const auto& c : entry.commands) {
    if (const auto* m = std::get_if<act::ShowMessage>(&c.action)) return m->text;
  }
  return {};
}

// Wall-clock pacing for realtime mode: virtual time advances with real time.
class Pacer {
 public:
  explicit Pacer(const Runtime& rt) : wall_start_(Clock::now()), virtual_start_(rt.now()) {}

  Clock::time_point deadline(const Runtime& rt) const {
    return wall_start_ + std::chrono::milliseconds(rt.next_tick_time() - virtual_start_);
  }

 private:
  Clock::time_point wall_start_;
  TimeMs virtual_start_;
};

// Reads stdin on its own thread so ticks keep their deadlines. The reader
// may outlive the REPL while blocked on input; it only touches shared state.
class LineSource {
 public:
  explicit LineSource(std::istream& in) : state_(std::make_shared<State>()) {
    reader_ = std::thread([state = state_, &in] {
      for (std::string line; std::getline(in, line);) {
        std::lock_guard lock(state->mu);
        state->lines.push_back(std::move(line));
        state->cv.notify_all();
      }
      std::lock_guard lock(state->mu);
      state->eof = true;
      state->cv.notify_all();
    });
  }

  ~LineSource() {
    std::unique_lock lock(state_->mu);
    const bool finished = state_->eof;
    lock.unlock();
    if (finished) {
      reader_.join();
    } else {
      reader_.detach();
    }
  }

  // A line, or nullopt at EOF; waits until `until` at most.
  std::optional<std::optional<std::string>> next(Clock::time_point until) {
    std::unique_lock lock(state_->mu);
    state_->cv.wait_until(lock, until, [&] { return !state_->lines.empty() || state_->eof; });
    if (!state_->lines.empty()) {
      std::string line = std::move(state_->lines.front());
      state_->lines.pop_front();
      return std::optional<std::string>(std::move(line));
    }
    if (state_->eof) return std::optional<std::string>();
    return std::nullopt;
  }

 private:
  struct State {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::string> lines;
    bool eof = false;
  };

  std::shared_ptr<State> state_;
  std::thread reader_;
};

}  // namespace

std::string describe(const TraceEntry& entry) {
  std::ostringstream out;
  nlohmann::json event = bus::event_kind_to_json(entry.event.kind);
  out << "[t=" << entry.event.t << " seq=" << entry.event.seq << "] " << json_io::canonical(event) << "\n";
  for (const auto& k : entry.derived_events) out << "  derived " << json_io::canonical(bus::event_kind_to_json(k)) << "\n";
  for (const auto& c : entry.commands) out << "  cmd " << json_io::canonical(bus::command_to_json(c)) << "\n";
  for (const auto& k : entry.emitted_events) out << "  raised " << json_io::canonical(bus::event_kind_to_json(k)) << "\n";
  for (const auto& k : entry.device_events) out << "  device " << json_io::canonical(bus::event_kind_to_json(k)) << "\n";
  return out.str();
}

std::string describe_state(const Runtime& rt) {
  std::ostringstream out;
  const auto& ids = rt.roster();
  const auto& s = rt.agents();
  out << "t=" << rt.now() << " user_zone=" << (rt.user_zone() ? rt.user_zone()->str() : "none") << "\n";
  out << "agent " << ids.guide.id.str() << " " << json_io::canonical(agents::to_json(s.guide)) << "\n";
  out << "agent " << ids.workstation.id.str() << " " << json_io::canonical(agents::to_json(s.workstation)) << "\n";
  out << "agent " << ids.relax.id.str() << " " << json_io::canonical(agents::to_json(s.relax)) << "\n";
  out << "agent " << ids.meeting.id.str() << " " << json_io::canonical(agents::to_json(s.meeting)) << "\n";
  for (const auto& d : rt.devices().states()) {
    out << "device " << devices::id_of(d).str() << " " << json_io::canonical(devices::to_json(d)) << "\n";
  }
  return out.str();
}

int interactive_repl(Runtime& rt, std::istream& in, std::ostream& out, const ReplOptions& options) {
  std::string display;
  rt.on_entry([&](const TraceEntry& entry) {
    if (auto text = last_display(entry); !text.empty()) display = text;
    if (!is_quiet_tick(entry)) out << describe(entry);
  });

  auto handle = [&](const std::string& line) -> bool {
    const auto tokens = tokenize(line);
    if (tokens.empty()) return true;
    const std::string& verb = tokens[0];
    if (verb == "quit" || verb == "exit") return false;
    if (verb == "help") {
      out << kUsage << "\n";
    } else if (verb == "state") {
      out << describe_state(rt);
    } else if (verb == "tick") {
      long n = 1;
      if (tokens.size() == 2) n = std::strtol(tokens[1].c_str(), nullptr, 10);
      if (tokens.size() > 2 || n <= 0) {
        out << "usage: tick [N]\n";
        return true;
      }
      for (long i = 0; i < n; ++i) rt.tick();
      out << "advanced " << n << " tick(s) to t=" << rt.now();
      if (!display.empty()) out << "; display: " << display;
      out << "\n";
    } else {
      try {
        rt.submit(parse_user_action(tokens, rt.layout()));
      } catch (const Error& e) {
        out << "error: " << e.what() << "\n" << kUsage << "\n";
      }
    }
    out.flush();
    return true;
  };

  if (!options.realtime) {
    if (options.prompt) out << "xri> " << std::flush;
    for (std::string line; std::getline(in, line);) {
      if (!handle(line)) break;
      rt.pump();
      if (options.prompt) out << "xri> " << std::flush;
    }
    rt.on_entry(nullptr);
    return 0;
  }

  LineSource source(in);
  Pacer pacer(rt);
  while (true) {
    const auto until = std::min(pacer.deadline(rt), Clock::now() + 50ms);
    if (auto line = source.next(until)) {
      if (!*line || !handle(**line)) break;
    }
    rt.pump();
    while (Clock::now() >= pacer.deadline(rt)) rt.tick();
  }
  rt.on_entry(nullptr);
  return 0;
}

int serve(Runtime& rt, const ServeOptions& options, const std::atomic<bool>& stop, std::ostream& log) {
  httplib::Server http;
  std::thread http_thread;
  if (options.http_port != 0) {
    const std::string layout_body = serialize_layout(rt.layout());
    http.Get("/layout.json", [layout_body](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_content(layout_body, "application/json");
    });
    http.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { res.set_content("ok", "text/plain"); });
    int port = options.http_port;
    if (port < 0) {
      port = http.bind_to_any_port(options.http_host);
    } else if (!http.bind_to_port(options.http_host, port)) {
      port = -1;
    }
    if (port < 0) {
      log << "error: cannot bind HTTP endpoint on port " << options.http_port << "\n";
      return 1;
    }
    if (options.bound_port) *options.bound_port = port;
    log << "layout served at http://" << options.http_host << ":" << port << "/layout.json\n";
    http_thread = std::thread([&http] { http.listen_after_bind(); });
  }

  Pacer pacer(rt);
  log << "serving space '" << rt.layout().space_id << "'\n" << std::flush;
  while (!stop) {
    rt.pump();
    while (Clock::now() >= pacer.deadline(rt)) rt.tick();
    // Short waits keep ticks on time while ingress is idle.
    std::this_thread::sleep_for(5ms);
  }
  if (http_thread.joinable()) {
    http.stop();
    http_thread.join();
  }
  return 0;
}

}  // namespace xri::scenario
