#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <thread>

namespace xri::testing {

// Single-threaded MQTT 3.1.1 broker for tests: QoS 0/1, retained messages,
// in-order fan-out. stop() drops every client; start() listens again on the
// same port, keeping the retained store.
class MiniBroker {
 public:
  explicit MiniBroker(std::uint16_t port = 0);
  ~MiniBroker();

  MiniBroker(const MiniBroker&) = delete;
  MiniBroker& operator=(const MiniBroker&) = delete;

  void start();
  void stop();

  std::uint16_t port() const noexcept { return port_; }
  std::string url() const { return "mqtt://127.0.0.1:" + std::to_string(port_); }
  std::size_t publishes_received() const noexcept { return publishes_.load(); }
  std::size_t connections_accepted() const noexcept { return connections_.load(); }

 private:
  void loop(int listen_fd, int wake_fd);

  std::uint16_t port_;
  std::thread worker_;
  int wake_write_ = -1;
  std::mutex retained_mu_;
  std::map<std::string, std::string> retained_;
  std::atomic<std::size_t> publishes_{0};
  std::atomic<std::size_t> connections_{0};
};

}  // namespace xri::testing
