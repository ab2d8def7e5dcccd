#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "xri/bus/message_bus.hpp"
#include "xri/core/error.hpp"

namespace xri::bus {
namespace {

using namespace std::chrono_literals;

TEST(InProcessBus, FifoDelivery) {
  InProcessBus bus;
  std::vector<std::string> seen;
  bus.subscribe("xri/lab/#", [&](const Message& m) { seen.push_back(m.payload); });
  bus.publish({"xri/lab/event/user/gesture", "A", false});
  bus.publish({"xri/lab/event/user/moved", "B", false});
  EXPECT_TRUE(seen.empty());
  EXPECT_EQ(bus.drain(), 2u);
  EXPECT_EQ(seen, (std::vector<std::string>{"A", "B"}));
}

TEST(InProcessBus, FilterSemantics) {
  InProcessBus bus;
  std::vector<std::string> seen;
  bus.subscribe("xri/lab/event/#", [&](const Message& m) { seen.push_back(m.topic); });
  bus.publish({"xri/lab/event/user/gesture", "{}", false});
  bus.publish({"xri/lab/cmd/device/light1", "{}", false});
  bus.drain();
  EXPECT_EQ(seen, std::vector<std::string>{"xri/lab/event/user/gesture"});
}

TEST(InProcessBus, RetainedReplayForLateSubscriber) {
  InProcessBus bus;
  bus.publish({"xri/lab/state/agent/meeting", "old", true});
  bus.publish({"xri/lab/state/agent/meeting", "new", true});
  bus.drain();
  std::vector<Message> seen;
  bus.subscribe("xri/lab/state/#", [&](const Message& m) { seen.push_back(m); });
  bus.drain();
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_EQ(seen[0], (Message{"xri/lab/state/agent/meeting", "new", true}));
  bus.publish({"xri/lab/state/agent/meeting", "live", true});
  bus.drain();
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_FALSE(seen[1].retain);
}

TEST(InProcessBus, HandlersMayPublish) {
  InProcessBus bus;
  std::vector<std::string> order;
  bus.subscribe("a", [&](const Message&) {
    order.push_back("a");
    bus.publish({"b", "", false});
  });
  bus.subscribe("b", [&](const Message&) { order.push_back("b"); });
  bus.publish({"a", "", false});
  bus.publish({"c", "", false});
  bus.drain();
  EXPECT_EQ(order, (std::vector<std::string>{"a", "b"}));
}

TEST(Backoff, BoundsAndGrowth) {
  EXPECT_EQ(backoff_delay(0, 0.0), 250ms);
  EXPECT_EQ(backoff_delay(0, 1.0), 500ms);
  EXPECT_EQ(backoff_delay(1, 1.0), 1000ms);
  EXPECT_EQ(backoff_delay(20, 1.0), 30s);
  EXPECT_EQ(backoff_delay(200, 0.0), 15s);
  testing::Rng rng(1);
  for (unsigned attempt = 0; attempt < 64; ++attempt) {
    const double j = testing::uniform_real(rng, 0.0, 1.0);
    const auto d = backoff_delay(attempt, j);
    const auto ceiling = std::min<std::chrono::milliseconds>(30s, attempt < 16 ? 500ms * (1LL << attempt) : 30s);
    EXPECT_GE(d, ceiling / 2);
    EXPECT_LE(d, ceiling);
    EXPECT_LE(backoff_delay(attempt, j), backoff_delay(attempt + 1, j));
  }
}

TEST(BrokerUrl, Parsing) {
  auto e = parse_broker_url("mqtt://broker.local:1884");
  EXPECT_EQ(e.host, "broker.local");
  EXPECT_EQ(e.port, 1884);
  EXPECT_EQ(parse_broker_url("tcp://10.0.0.2").port, 1883);
  EXPECT_EQ(parse_broker_url("localhost").host, "localhost");
  EXPECT_THROW(parse_broker_url("mqtt://:1883"), Error);
  EXPECT_THROW(parse_broker_url("mqtt://host:notaport"), Error);
  EXPECT_THROW(parse_broker_url("ws://host"), Error);
}

TEST(BrokerUrl, EnvironmentSelectsMode) {
  ::unsetenv("XRI_BROKER_URL");
  EXPECT_EQ(broker_url_from_env(), std::nullopt);
  ::setenv("XRI_BROKER_URL", "", 1);
  EXPECT_EQ(broker_url_from_env(), std::nullopt);
  ::setenv("XRI_BROKER_URL", "mqtt://h:1", 1);
  EXPECT_EQ(broker_url_from_env(), "mqtt://h:1");
  ::unsetenv("XRI_BROKER_URL");
  EXPECT_NE(dynamic_cast<InProcessBus*>(make_bus(std::nullopt).get()), nullptr);
}

}  // namespace
}  // namespace xri::bus
