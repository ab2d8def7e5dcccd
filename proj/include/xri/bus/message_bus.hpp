#pragma once

#include <chrono>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace xri::bus {

struct Message {
  std::string topic;
  std::string payload;
  bool retain = false;

  friend bool operator==(const Message&, const Message&) = default;
};

using Handler = std::function<void(const Message&)>;

enum class BusStatus { kDisconnected, kConnected };

// Client contract shared by the in-process bus and the MQTT client. Handlers
// only ever run inside drain(), on the calling thread, in delivery order.
class MessageBus {
 public:
  virtual ~MessageBus() = default;

  virtual void connect(std::string_view endpoint) = 0;
  virtual void publish(const Message& m) = 0;
  virtual void subscribe(const std::string& filter, Handler handler) = 0;
  // Dispatches everything delivered so far; returns the number of handler calls.
  virtual std::size_t drain() = 0;
  // Blocks until at least one delivery is waiting or the timeout passes.
  virtual bool wait_for_delivery(std::chrono::milliseconds timeout) = 0;
  virtual BusStatus status() const = 0;
};

// Deterministic single-threaded bus. Messages are delivered in global publish
// order; retained messages reach late subscribers.
class InProcessBus final : public MessageBus {
 public:
  void connect(std::string_view) override {}
  void publish(const Message& m) override;
  void subscribe(const std::string& filter, Handler handler) override;
  std::size_t drain() override;
  bool wait_for_delivery(std::chrono::milliseconds) override { return !queue_.empty(); }
  BusStatus status() const override { return BusStatus::kConnected; }

  std::size_t pending() const noexcept { return queue_.size(); }

 private:
  struct Subscription {
    std::string filter;
    Handler handler;
  };
  struct Delivery {
    Message message;
    std::optional<std::size_t> only;  // retained replay for one subscriber
  };

  std::vector<Subscription> subscriptions_;
  std::deque<Delivery> queue_;
  std::map<std::string, std::string> retained_;
};

// Reconnect delay: min(cap, base * 2^attempt), with the upper half jittered.
// `jitter` is a uniform sample from [0, 1].
std::chrono::milliseconds backoff_delay(unsigned attempt, double jitter,
                                        std::chrono::milliseconds base = std::chrono::milliseconds(500),
                                        std::chrono::milliseconds cap = std::chrono::seconds(30));

// mqtt://host:port, tcp://host:port or host[:port]; default port 1883.
struct BrokerEndpoint {
  std::string host;
  std::uint16_t port = 1883;
};
BrokerEndpoint parse_broker_url(std::string_view url);

// The MQTT 3.1.1 client when `url` is set, else the in-process bus.
std::unique_ptr<MessageBus> make_bus(const std::optional<std::string>& url);

// XRI_BROKER_URL, if set and non-empty.
std::optional<std::string> broker_url_from_env();

}  // namespace xri::bus
