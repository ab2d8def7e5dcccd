#include "fixtures.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace xri::testing {

std::filesystem::path source_path(const std::string& relative) {
  return std::filesystem::path(XRI_SOURCE_DIR) / relative;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpaceLayout lab_layout() { return load_layout(source_path("data/layouts/lab.layout.json")); }

SpaceLayout lab_layout(TimeMs study_threshold_ms) {
  auto layout = lab_layout();
  layout.config.study_threshold_ms = study_threshold_ms;
  return layout;
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string random_identifier(Rng& rng) {
  static constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz0123456789_-.";
  const int n = uniform_int(rng, 1, 8);
  std::string s;
  for (int i = 0; i < n; ++i) s.push_back(kAlphabet[uniform_int(rng, 0, static_cast<int>(kAlphabet.size()) - 1)]);
  return s;
}

bus::Topic random_topic(Rng& rng) {
  bus::Topic t;
  t.space_id = random_identifier(rng);
  t.channel = static_cast<bus::Channel>(uniform_int(rng, 0, 2));
  t.category = static_cast<bus::Category>(uniform_int(rng, 0, 5));
  t.subject = random_identifier(rng);
  if (coin(rng)) t.leaf = random_identifier(rng);
  return t;
}

namespace {

// Reals with short and long decimal forms, negative zero excluded.
double random_number(Rng& rng) {
  switch (uniform_int(rng, 0, 3)) {
    case 0: return uniform_int(rng, -50, 50);
    case 1: return uniform_int(rng, -500, 500) / 10.0;
    case 2: return uniform_real(rng, -100.0, 100.0);
    default: return uniform_real(rng, 0.0, 1e-3);
  }
}

DeviceStatus random_status(Rng& rng) {
  switch (uniform_int(rng, 0, 4)) {
    case 0: return LightStatus{coin(rng)};
    case 1: return SwitchStatus{coin(rng) ? SwitchPosition::kOn : SwitchPosition::kOff};
    case 2: return LuminanceStatus{std::abs(random_number(rng))};
    case 3: {
      const bool powered = coin(rng);
      return ProjectorStatus{powered, powered && coin(rng) ? ProjectorMode::kMeeting : ProjectorMode::kOff};
    }
    default: return DisplayStatus{coin(rng) ? Theme::kParticles : Theme::kNeutral};
  }
}

TaskItem random_item(Rng& rng) { return static_cast<TaskItem>(uniform_int(rng, 0, 2)); }

Place random_place(Rng& rng) {
  switch (uniform_int(rng, 0, 3)) {
    case 0: return WithUser{};
    case 1: return ZoneId(random_identifier(rng));
    case 2: return DeviceId(random_identifier(rng));
    default: return Position(random_number(rng), random_number(rng));
  }
}

}  // namespace

EventKind random_event_kind(Rng& rng) {
  switch (uniform_int(rng, 0, 9)) {
    case 0: return ev::UserAppeared{};
    case 1: return ev::Gesture{random_identifier(rng)};
    case 2: return ev::UserMoved{Position(random_number(rng), random_number(rng))};
    case 3: return ev::ZoneEntry{ZoneId(random_identifier(rng))};
    case 4: return ev::ZoneExit{ZoneId(random_identifier(rng))};
    case 5: return ev::MenuSelect{random_item(rng)};
    case 6: return ev::SwitchToggle{DeviceId(random_identifier(rng))};
    case 7: return ev::DeviceStateChanged{DeviceId(random_identifier(rng)), random_status(rng)};
    case 8: return ev::Tick{};
    default: return ev::StudyThresholdReached{AgentId(random_identifier(rng)), uniform_int(rng, 0, 1 << 30)};
  }
}

Event random_event(Rng& rng) {
  Event e;
  e.t = std::uniform_int_distribution<TimeMs>(0, TimeMs{1} << 40)(rng);
  e.seq = std::uniform_int_distribution<Seq>(0, Seq{1} << 40)(rng);
  e.kind = random_event_kind(rng);
  return e;
}

Command random_command(Rng& rng) {
  Command c;
  c.issuer = AgentId(random_identifier(rng));
  c.target = coin(rng) ? Target::device(DeviceId(random_identifier(rng))) : Target::avatar(AgentId(random_identifier(rng)));
  switch (uniform_int(rng, 0, 7)) {
    case 0: c.action = act::SetPower{coin(rng)}; break;
    case 1: c.action = act::ShowMessage{random_identifier(rng) + " " + random_identifier(rng)}; break;
    case 2: {
      act::ShowIndicator s{random_identifier(rng), std::nullopt};
      if (coin(rng)) s.zone = ZoneId(random_identifier(rng));
      c.action = s;
      break;
    }
    case 3: {
      act::ShowMenu m;
      const int n = uniform_int(rng, 0, 3);
      for (int i = 0; i < n; ++i) m.items.push_back(random_item(rng));
      c.action = m;
      break;
    }
    case 4: c.action = act::MoveTo{random_place(rng)}; break;
    case 5: c.action = act::Wave{}; break;
    case 6: c.action = act::SceneTransform{coin(rng) ? Theme::kParticles : Theme::kNeutral}; break;
    default: c.action = act::SetMode{coin(rng) ? ProjectorMode::kMeeting : ProjectorMode::kOff}; break;
  }
  return c;
}

std::vector<Zone> random_zones(Rng& rng, int max_zones) {
  const int n = uniform_int(rng, 1, max_zones);
  std::vector<Zone> zones;
  for (int i = 0; i < n; ++i) {
    Zone z;
    // Short ids collide on purpose; duplicates are re-drawn.
    do {
      z.id = ZoneId(std::string(1, static_cast<char>('a' + uniform_int(rng, 0, 11))) + std::to_string(uniform_int(rng, 0, 2)));
    } while (std::any_of(zones.begin(), zones.end(), [&](const Zone& o) { return o.id == z.id; }));
    const double x0 = uniform_int(rng, 0, 8), y0 = uniform_int(rng, 0, 8);
    const double w = uniform_int(rng, 1, 4) * (coin(rng, 0.8) ? 1.0 : 0.5);
    const double h = uniform_int(rng, 1, 4) * (coin(rng, 0.8) ? 1.0 : 0.5);
    z.bounds = {Position(x0, y0), Position(x0 + w, y0 + h)};
    z.kind = ZoneKind::kNeutral;
    zones.push_back(std::move(z));
  }
  return zones;
}

Position random_point_near(Rng& rng, const std::vector<Zone>& zones) {
  if (coin(rng, 0.3)) {
    // Exactly on a corner or edge of some zone.
    const auto& z = zones[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(zones.size()) - 1))];
    const double x = coin(rng) ? z.bounds.min.x() : z.bounds.max.x();
    const double y = coin(rng) ? uniform_real(rng, z.bounds.min.y(), z.bounds.max.y()) : z.bounds.min.y();
    return {x, y};
  }
  if (coin(rng, 0.3)) return {uniform_int(rng, -1, 13) * 0.5, uniform_int(rng, -1, 13) * 0.5};
  return {uniform_real(rng, -1.0, 13.0), uniform_real(rng, -1.0, 13.0)};
}

EventKind random_lab_input(Rng& rng, const SpaceLayout& lab) {
  switch (uniform_int(rng, 0, 9)) {
    case 0:
    case 1: return ev::Gesture{coin(rng, 0.8) ? std::string(kThumbsUp) : std::string("wave")};
    case 2:
    case 3: return ev::MenuSelect{static_cast<TaskItem>(uniform_int(rng, 0, 2))};
    case 4:
    case 5: {
      const auto& z = lab.zones[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(lab.zones.size()) - 1))];
      return ev::UserMoved{z.bounds.center()};
    }
    case 6: return ev::UserMoved{Position(uniform_real(rng, -2.0, 12.0), uniform_real(rng, -2.0, 12.0))};
    case 7:
    case 8: return ev::SwitchToggle{DeviceId("switch1")};
    default: return ev::UserAppeared{};
  }
}

std::optional<ZoneId> brute_force_membership(const Position& p, const std::vector<Zone>& zones) {
  std::vector<std::tuple<double, std::string>> inside;
  for (const auto& z : zones) {
    const auto& b = z.bounds;
    const bool in_x = !(p.x() < b.min.x()) && !(p.x() > b.max.x());
    const bool in_y = !(p.y() < b.min.y()) && !(p.y() > b.max.y());
    if (in_x && in_y) {
      const double w = b.max.x() - b.min.x();
      const double h = b.max.y() - b.min.y();
      inside.emplace_back(w * h, z.id.str());
    }
  }
  if (inside.empty()) return std::nullopt;
  std::sort(inside.begin(), inside.end());
  return ZoneId(std::get<1>(inside.front()));
}

int nearest_centroid_oracle(double v, double a, double pr) {
  static constexpr std::array<std::array<double, 3>, 5> kCentroids{{
      {0.1, 0.1, 0.1},
      {0.1, 0.5, 0.9},
      {0.9, 0.1, 0.1},
      {0.9, 0.3, 0.9},
      {0.5, 0.9, 0.9},
  }};
  std::vector<std::pair<double, int>> ranked;
  for (int i = 0; i < 5; ++i) {
    const auto& c = kCentroids[static_cast<std::size_t>(i)];
    const double d = (v - c[0]) * (v - c[0]) + (a - c[1]) * (a - c[1]) + (pr - c[2]) * (pr - c[2]);
    ranked.emplace_back(d, i + 1);
  }
  std::sort(ranked.begin(), ranked.end());
  return ranked.front().second;
}

}  // namespace xri::testing
