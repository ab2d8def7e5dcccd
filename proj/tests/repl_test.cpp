#include <gtest/gtest.h>

#include <httplib.h>

#include <condition_variable>
#include <mutex>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "xri/bus/message_bus.hpp"
#include "xri/scenario/repl.hpp"
#include "xri/scenario/trace.hpp"

namespace xri::scenario {
namespace {

struct Session {
  int status;
  std::string output;
  Trace trace;
};

Session drive(const std::string& input, const SpaceLayout& layout = testing::lab_layout()) {
  Runtime rt(layout);
  std::istringstream in(input);
  std::ostringstream out;
  const int status = interactive_repl(rt, in, out);
  return {status, out.str(), rt.trace()};
}

TEST(Repl, ThumbsUpShowsThreeItemMenu) {
  const auto s = drive("move 5 5.5\ngesture thumbs_up\n");
  EXPECT_NE(s.output.find(R"("items":["start_learning","start_relaxing","start_meeting"])"), std::string::npos) << s.output;
  EXPECT_NE(s.output.find(R"("type":"show_menu")"), std::string::npos);
}

TEST(Repl, ThresholdAfterFifteenHundredTicks) {
  const auto s = drive("enter learning\ntick 1500\n");
  EXPECT_NE(s.output.find(R"("type":"study_threshold_reached")"), std::string::npos);
  EXPECT_NE(s.output.find("advanced 1500 tick(s) to t=1500000; display: study_time 00:25:00"), std::string::npos)
      << s.output;
  const auto early = drive("enter learning\ntick 1499\n");
  EXPECT_EQ(early.output.find("study_threshold_reached"), std::string::npos);
}

TEST(Repl, QuitExitsZero) {
  const auto s = drive("quit\ngesture thumbs_up\n");
  EXPECT_EQ(s.status, 0);
  EXPECT_TRUE(s.trace.empty());
}

TEST(Repl, UnknownCommandPrintsUsageAndContinues) {
  const auto s = drive("dance\nenter garage\ntick -3\ngesture thumbs_up\n");
  EXPECT_NE(s.output.find("commands: gesture NAME"), std::string::npos);
  EXPECT_NE(s.output.find("UNKNOWN_ZONE"), std::string::npos);
  EXPECT_NE(s.output.find("usage: tick [N]"), std::string::npos);
  EXPECT_EQ(s.trace.size(), 1u);
  EXPECT_EQ(s.status, 0);
}

TEST(Repl, StatePrintsAgentsAndDevices) {
  const auto s = drive("toggle switch1\nstate\n");
  for (const char* needle : {"agent guide {", "agent workstation {", "agent relaxation {", "agent meeting {",
                             "device light1 {\"device_id\":\"light1\",\"kind\":\"light\",\"powered\":false}",
                             "device lux1 {\"device_id\":\"lux1\",\"kind\":\"luminance_sensor\",\"lux\":5.0}",
                             "device projector1", "device wall_display", "user_zone=none"}) {
    EXPECT_NE(s.output.find(needle), std::string::npos) << needle << "\n" << s.output;
  }
}

TEST(Repl, SameTraceAsEquivalentScript) {
  const auto layout = testing::lab_layout();
  const auto script = load_script(
      "at 0 move 5 5.5\n"
      "at 0 gesture thumbs_up\n"
      "at 0 select start_meeting\n"
      "at 2000 enter meeting\n"
      "at 3000 toggle switch1\n"
      "at 3000 gesture wave\n",
      layout);
  const auto scripted = run_scenario(script, layout);

  const auto typed = drive(
      "move 5 5.5\n"
      "gesture thumbs_up\n"
      "select start_meeting\n"
      "tick 2\n"
      "enter meeting\n"
      "tick\n"
      "toggle switch1\n"
      "gesture wave\n"
      "tick\n",
      layout);
  EXPECT_EQ(diff_traces(parse_trace(trace_to_jsonl(scripted)), parse_trace(trace_to_jsonl(typed.trace))), std::nullopt);
}

// An input stream that blocks like a terminal until lines arrive or it closes.
class LineFeed : public std::streambuf {
 public:
  void push(const std::string& text) {
    std::lock_guard lock(mu_);
    pending_ += text;
    cv_.notify_all();
  }
  void close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    cv_.notify_all();
  }

 protected:
  int_type underflow() override {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return !pending_.empty() || closed_; });
    if (pending_.empty()) return traits_type::eof();
    current_.swap(pending_);
    pending_.clear();
    setg(current_.data(), current_.data(), current_.data() + current_.size());
    return traits_type::to_int_type(current_[0]);
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::string pending_;
  std::string current_;
  bool closed_ = false;
};

TEST(Repl, RealtimeTicksOnWallClock) {
  auto layout = testing::lab_layout();
  layout.config.tick_ms = 20;
  Runtime rt(layout);
  LineFeed feed;
  std::istream in(&feed);
  std::ostringstream out;
  ReplOptions options;
  options.realtime = true;
  std::thread typist([&] {
    feed.push("enter learning\n");
    std::this_thread::sleep_for(std::chrono::milliseconds(300));
    feed.push("quit\n");
    feed.close();
  });
  EXPECT_EQ(interactive_repl(rt, in, out, options), 0);
  typist.join();
  // About fifteen ticks in 300 ms; allow a slow machine plenty of slack.
  EXPECT_GE(rt.now(), 100);
  EXPECT_LE(rt.now(), 2000);
  EXPECT_TRUE(rt.agents().workstation.studying);
}

TEST(Serve, LayoutEndpointAndIngress) {
  const auto layout = testing::lab_layout();
  bus::InProcessBus bus;
  Runtime rt(layout, &bus);
  std::atomic<bool> stop{false};
  std::atomic<int> port{0};
  ServeOptions options;
  options.http_port = -1;
  options.http_host = "127.0.0.1";
  options.bound_port = &port;
  std::ostringstream log;
  std::thread server([&] { serve(rt, options, stop, log); });
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(3);
  while (port == 0 && std::chrono::steady_clock::now() < deadline) std::this_thread::sleep_for(std::chrono::milliseconds(5));
  ASSERT_GT(port.load(), 0);

  httplib::Client client("127.0.0.1", port.load());
  httplib::Result res;
  for (int attempt = 0; attempt < 50 && !res; ++attempt) {
    res = client.Get("/layout.json");
    if (!res) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(parse_layout(res->body), layout);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");
  auto health = client.Get("/healthz");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->body, "ok");
  EXPECT_EQ(client.Get("/nope")->status, 404);

  stop = true;
  server.join();
  EXPECT_NE(log.str().find("/layout.json"), std::string::npos);
}

}  // namespace
}  // namespace xri::scenario
