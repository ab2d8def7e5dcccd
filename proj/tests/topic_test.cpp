#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "xri/bus/topic.hpp"
#include "xri/core/error.hpp"

namespace xri::bus {
namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kTimeout;
}

std::string detail_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.detail();
  }
  return "<none>";
}

TEST(EncodeTopic, Grammar) {
  EXPECT_EQ(encode_topic({"lab", Channel::kEvent, Category::kUser, "gesture", std::nullopt}), "xri/lab/event/user/gesture");
  EXPECT_EQ(encode_topic({"lab", Channel::kEvent, Category::kZone, "learning", "entry"}),
            "xri/lab/event/zone/learning/entry");
  EXPECT_EQ(encode_topic({"lab", Channel::kCmd, Category::kDevice, "light1", std::nullopt}), "xri/lab/cmd/device/light1");
  EXPECT_EQ(encode_topic({"lab", Channel::kCmd, Category::kAvatar, "guide", std::nullopt}), "xri/lab/cmd/avatar/guide");
  EXPECT_EQ(encode_topic({"lab", Channel::kState, Category::kAgent, "meeting", std::nullopt}), "xri/lab/state/agent/meeting");
}

TEST(EncodeTopic, RejectsReservedCharacters) {
  for (const char* bad : {"a/b", "a#", "+", ""}) {
    EXPECT_EQ(code_of([&] { encode_topic({"lab", Channel::kEvent, Category::kUser, bad, std::nullopt}); }),
              ErrorCode::kInvalidIdentifier)
        << bad;
  }
  EXPECT_EQ(code_of([] { encode_topic({"l/ab", Channel::kEvent, Category::kUser, "x", std::nullopt}); }),
            ErrorCode::kInvalidIdentifier);
  EXPECT_EQ(code_of([] { encode_topic({"lab", Channel::kEvent, Category::kUser, "x", std::string("")}); }),
            ErrorCode::kInvalidIdentifier);
}

TEST(DecodeTopic, Inverse) {
  const auto t = decode_topic("xri/lab/cmd/device/light1");
  EXPECT_EQ(t, (Topic{"lab", Channel::kCmd, Category::kDevice, "light1", std::nullopt}));
  EXPECT_EQ(decode_topic("xri/lab/event/zone/learning/entry").leaf, "entry");
}

TEST(DecodeTopic, MalformedSegments) {
  auto decode = [](const char* s) { return [s] { decode_topic(s); }; };
  EXPECT_EQ(code_of(decode("xri/lab/bogus/user/gesture")), ErrorCode::kMalformedTopic);
  EXPECT_EQ(detail_of(decode("xri/lab/bogus/user/gesture")), "2");
  EXPECT_EQ(detail_of(decode("xri/lab/event/robot/gesture")), "3");
  EXPECT_EQ(detail_of(decode("mqtt/lab/event/user/gesture")), "0");
  EXPECT_EQ(detail_of(decode("xri/lab/event/user")), "4");
  EXPECT_EQ(detail_of(decode("xri/lab/event/user/a/b/c")), "6");
  EXPECT_EQ(detail_of(decode("xri//event/user/a")), "1");
  EXPECT_EQ(detail_of(decode("xri/lab/event/user/a/")), "5");
}

TEST(DecodeTopic, RoundTripRandom) {
  testing::Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto t = testing::random_topic(rng);
    EXPECT_EQ(decode_topic(encode_topic(t)), t);
  }
}

TEST(TopicMatches, FilterSemantics) {
  EXPECT_TRUE(topic_matches("xri/lab/event/#", "xri/lab/event/user/gesture"));
  EXPECT_FALSE(topic_matches("xri/lab/event/#", "xri/lab/cmd/device/light1"));
  EXPECT_TRUE(topic_matches("xri/lab/event/#", "xri/lab/event"));
  EXPECT_TRUE(topic_matches("xri/+/state/agent/+", "xri/lab/state/agent/meeting"));
  EXPECT_FALSE(topic_matches("xri/+/state/agent/+", "xri/lab/state/agent/meeting/x"));
  EXPECT_TRUE(topic_matches("#", "xri/a/b"));
  EXPECT_TRUE(topic_matches("xri/lab/event/user/gesture", "xri/lab/event/user/gesture"));
  EXPECT_FALSE(topic_matches("xri/lab/event/user/gesture", "xri/lab/event/user/gestures"));
}

}  // namespace
}  // namespace xri::bus
