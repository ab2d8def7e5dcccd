#pragma once

#include <optional>
#include <string>
#include <string_view>

// Topic grammar: xri/{space_id}/{channel}/{category}/{subject}[/{leaf}]
namespace xri::bus {

enum class Channel { kEvent, kCmd, kState };
enum class Category { kUser, kZone, kDevice, kAgent, kAvatar, kUi };

std::string_view to_string(Channel c);
std::string_view to_string(Category c);

struct Topic {
  std::string space_id;
  Channel channel = Channel::kEvent;
  Category category = Category::kUser;
  std::string subject;
  std::optional<std::string> leaf;

  friend auto operator<=>(const Topic&, const Topic&) = default;
  friend bool operator==(const Topic&, const Topic&) = default;
};

inline constexpr std::string_view kTopicRoot = "xri";

// Throws Error(kInvalidIdentifier) naming the bad segment.
std::string encode_topic(const Topic& t);

// Throws Error(kMalformedTopic) with the offending segment index as detail.
Topic decode_topic(std::string_view s);

// MQTT filter semantics: `+` matches one level, a trailing `#` matches the rest.
bool topic_matches(std::string_view filter, std::string_view topic);

}  // namespace xri::bus
