#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "xri/bus/message_bus.hpp"
#include "xri/bus/mqtt_client.hpp"
#include "xri/bus/topic.hpp"
#include "xri/core/error.hpp"

namespace xri::bus {

void InProcessBus::publish(const Message& m) {
  if (m.retain) {
    if (m.payload.empty()) retained_.erase(m.topic);
    else retained_[m.topic] = m.payload;
  }
  queue_.push_back({m, std::nullopt});
}

void InProcessBus::subscribe(const std::string& filter, Handler handler) {
  subscriptions_.push_back({filter, std::move(handler)});
  const std::size_t index = subscriptions_.size() - 1;
  for (const auto& [topic, payload] : retained_) {
    if (topic_matches(filter, topic)) queue_.push_back({{topic, payload, true}, index});
  }
}

std::size_t InProcessBus::drain() {
  std::size_t calls = 0;
  // Handlers may publish; those messages are delivered in this same drain.
  while (!queue_.empty()) {
    Delivery d = std::move(queue_.front());
    queue_.pop_front();
    if (d.only) {
      subscriptions_[*d.only].handler(d.message);
      ++calls;
      continue;
    }
    // Live deliveries carry retain=false, as a broker forwards them.
    Message live{d.message.topic, d.message.payload, false};
    for (std::size_t i = 0; i < subscriptions_.size(); ++i) {
      if (topic_matches(subscriptions_[i].filter, live.topic)) {
        subscriptions_[i].handler(live);
        ++calls;
      }
    }
  }
  return calls;
}

std::chrono::milliseconds backoff_delay(unsigned attempt, double jitter, std::chrono::milliseconds base,
                                        std::chrono::milliseconds cap) {
  const double raw = static_cast<double>(base.count()) * std::pow(2.0, static_cast<double>(std::min(attempt, 30u)));
  const double ceiling = std::min(raw, static_cast<double>(cap.count()));
  const double j = std::clamp(jitter, 0.0, 1.0);
  return std::chrono::milliseconds(static_cast<std::int64_t>(ceiling / 2.0 + j * ceiling / 2.0));
}

BrokerEndpoint parse_broker_url(std::string_view url) {
  for (std::string_view scheme : {"mqtt://", "tcp://"}) {
    if (url.substr(0, scheme.size()) == scheme) {
      url.remove_prefix(scheme.size());
      break;
    }
  }
  if (const auto slash = url.find('/'); slash != std::string_view::npos) url = url.substr(0, slash);
  BrokerEndpoint ep;
  const auto colon = url.rfind(':');
  if (colon == std::string_view::npos) {
    ep.host = std::string(url);
  } else {
    ep.host = std::string(url.substr(0, colon));
    const std::string port(url.substr(colon + 1));
    char* end = nullptr;
    const long p = std::strtol(port.c_str(), &end, 10);
    if (port.empty() || *end != '\0' || p <= 0 || p > 65535) {
      throw Error(ErrorCode::kInvalidValue, "broker_url", "bad port '" + port + "'");
    }
    ep.port = static_cast<std::uint16_t>(p);
  }
  if (ep.host.empty()) throw Error(ErrorCode::kInvalidValue, "broker_url", "missing host");
  return ep;
}

std::unique_ptr<MessageBus> make_bus(const std::optional<std::string>& url) {
  if (!url) return std::make_unique<InProcessBus>();
  auto client = std::make_unique<MqttClient>();
  client->connect(*url);
  return client;
}

std::optional<std::string> broker_url_from_env() {
  const char* v = std::getenv("XRI_BROKER_URL");
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

}  // namespace xri::bus
