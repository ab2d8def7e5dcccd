#include "xri/bus/topic.hpp"

#include <array>
#include <vector>

#include "xri/core/error.hpp"
#include "xri/core/layout.hpp"

namespace xri::bus {

namespace {

constexpr std::array<std::string_view, 3> kChannels{"event", "cmd", "state"};
constexpr std::array<std::string_view, 6> kCategories{"user", "zone", "device", "agent", "avatar", "ui"};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void malformed(std::size_t segment, const std::string& why) {
  throw Error(ErrorCode::kMalformedTopic, std::to_string(segment), why);
}

template <class E, std::size_t N>
E segment_enum(const std::array<std::string_view, N>& names, std::string_view seg, std::size_t index) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == seg) return static_cast<E>(i);
  }
  malformed(index, "unknown value '" + std::string(seg) + "'");
}

}  // namespace

std::string_view to_string(Channel c) { return kChannels[static_cast<std::size_t>(c)]; }
std::string_view to_string(Category c) { return kCategories[static_cast<std::size_t>(c)]; }

std::string encode_topic(const Topic& t) {
  auto check = [](const std::string& id, const char* what) {
    if (!is_valid_identifier(id)) throw Error(ErrorCode::kInvalidIdentifier, what, "'" + id + "'");
  };
  check(t.space_id, "space_id");
  check(t.subject, "subject");
  if (t.leaf) check(*t.leaf, "leaf");

  std::string out(kTopicRoot);
  for (std::string_view part : {std::string_view(t.space_id), to_string(t.channel), to_string(t.category),
                                std::string_view(t.subject)}) {
    out += '/';
    out += part;
  }
  if (t.leaf) {
    out += '/';
    out += *t.leaf;
  }
  return out;
}

Topic decode_topic(std::string_view s) {
  const auto segs = split(s, '/');
  if (segs[0] != kTopicRoot) malformed(0, "topic must start with 'xri'");
  if (segs.size() < 5) malformed(segs.size(), "missing segment");
  if (segs.size() > 6) malformed(6, "too many segments");
  for (std::size_t i = 1; i < segs.size(); ++i) {
    if (!is_valid_identifier(segs[i])) malformed(i, "invalid identifier");
  }
  Topic t;
  t.space_id = std::string(segs[1]);
  t.channel = segment_enum<Channel>(kChannels, segs[2], 2);
  t.category = segment_enum<Category>(kCategories, segs[3], 3);
  t.subject = std::string(segs[4]);
  if (segs.size() == 6) t.leaf = std::string(segs[5]);
  return t;
}

bool topic_matches(std::string_view filter, std::string_view topic) {
  const auto f = split(filter, '/');
  const auto t = split(topic, '/');
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == "#") return true;
    if (i >= t.size()) return false;
    if (f[i] != "+" && f[i] != t[i]) return false;
  }
  return f.size() == t.size();
}

}  // namespace xri::bus
