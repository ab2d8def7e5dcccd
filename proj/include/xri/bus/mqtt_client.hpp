#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "xri/bus/message_bus.hpp"
#include "xri/bus/mqtt_wire.hpp"

namespace xri::bus {

struct MqttOptions {
  std::uint16_t keepalive_s = 30;
  std::chrono::milliseconds backoff_base{500};
  std::chrono::milliseconds backoff_cap{30'000};
  std::chrono::milliseconds connect_timeout{5'000};
  std::chrono::milliseconds ack_timeout{5'000};
};

// MQTT 3.1.1 client. Everything is published at QoS 1; a network thread owns
// the socket, reconnects with jittered exponential backoff when the link
// drops, re-subscribes, and resends unacknowledged publishes. Received
// messages are queued and only dispatched from drain().
class MqttClient final : public MessageBus {
 public:
  explicit MqttClient(MqttOptions options = {});
  ~MqttClient() override;

  MqttClient(const MqttClient&) = delete;
  MqttClient& operator=(const MqttClient&) = delete;

  // Blocks until the first session is up; throws Error(kDisconnected) on failure.
  void connect(std::string_view endpoint) override;
  void publish(const Message& m) override;
  // Blocks until the broker acknowledges the subscription, when connected.
  void subscribe(const std::string& filter, Handler handler) override;
  std::size_t drain() override;
  bool wait_for_delivery(std::chrono::milliseconds timeout) override;
  BusStatus status() const override;

  // Blocks until every publish so far has been acknowledged.
  bool flush(std::chrono::milliseconds timeout);
  unsigned reconnects() const noexcept { return reconnects_.load(); }

 private:
  struct Subscription {
    std::string filter;
    Handler handler;
  };

  void run();
  bool open_session(std::string& buffer);
  void handle(const mqtt::Packet& p);
  bool send(std::string_view bytes);
  void drop_connection();
  std::uint16_t next_packet_id();

  MqttOptions options_;
  BrokerEndpoint endpoint_;
  std::string client_id_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::mutex write_mu_;
  int fd_ = -1;
  bool connected_ = false;
  std::atomic<bool> stop_{false};
  std::atomic<unsigned> reconnects_{0};
  std::uint16_t packet_id_ = 0;
  std::vector<Subscription> subscriptions_;
  std::map<std::uint16_t, mqtt::PublishFields> inflight_;
  std::map<std::uint16_t, bool> pending_subacks_;
  std::deque<Message> delivered_;
  std::thread worker_;
};

}  // namespace xri::bus
