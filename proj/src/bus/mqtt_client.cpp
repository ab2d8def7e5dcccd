#include "xri/bus/mqtt_client.hpp"

#include <poll.h>
#include <sys/socket.h>

#include <cerrno>
#include <random>

#include "xri/bus/topic.hpp"
#include "xri/core/error.hpp"

namespace xri::bus {

using namespace std::chrono_literals;

namespace {

std::string random_client_id() {
  std::random_device rd;
  std::uniform_int_distribution<std::uint32_t> dist;
  char buf[24];
  std::snprintf(buf, sizeof buf, "xri-%08x", dist(rd));
  return buf;
}

}  // namespace

MqttClient::MqttClient(MqttOptions options) : options_(options), client_id_(random_client_id()) {}

MqttClient::~MqttClient() {
  stop_ = true;
  {
    std::lock_guard lock(mu_);
    if (connected_) send(mqtt::disconnect_packet());
  }
  cv_.notify_all();
  if (worker_.joinable()) worker_.join();
  mqtt::close_fd(fd_);
}

void MqttClient::connect(std::string_view endpoint) {
  endpoint_ = parse_broker_url(endpoint);
  worker_ = std::thread([this] { run(); });
  std::unique_lock lock(mu_);
  if (!cv_.wait_for(lock, options_.connect_timeout, [&] { return connected_; })) {
    lock.unlock();
    stop_ = true;
    worker_.join();
    throw Error(ErrorCode::kDisconnected, std::string(endpoint), "broker unreachable");
  }
}

BusStatus MqttClient::status() const {
  std::lock_guard lock(mu_);
  return connected_ ? BusStatus::kConnected : BusStatus::kDisconnected;
}

std::uint16_t MqttClient::next_packet_id() {
  // Caller holds mu_. Zero is not a valid packet id.
  do {
    ++packet_id_;
  } while (packet_id_ == 0 || inflight_.count(packet_id_) || pending_subacks_.count(packet_id_));
  return packet_id_;
}

bool MqttClient::send(std::string_view bytes) {
  std::lock_guard lock(write_mu_);
  return fd_ >= 0 && mqtt::send_all(fd_, bytes);
}

void MqttClient::publish(const Message& m) {
  std::lock_guard lock(mu_);
  mqtt::PublishFields p{m.topic, m.payload, 1, m.retain, false, next_packet_id()};
  inflight_[p.packet_id] = p;
  // Unsent publishes stay in flight and go out after the next reconnect.
  if (connected_) send(mqtt::publish_packet(p));
}

void MqttClient::subscribe(const std::string& filter, Handler handler) {
  std::unique_lock lock(mu_);
  subscriptions_.push_back({filter, std::move(handler)});
  if (!connected_) return;
  const std::uint16_t id = next_packet_id();
  pending_subacks_[id] = false;
  send(mqtt::subscribe_packet(id, filter, 1));
  cv_.wait_for(lock, options_.ack_timeout, [&] { return pending_subacks_[id] || !connected_; });
  pending_subacks_.erase(id);
}

std::size_t MqttClient::drain() {
  std::deque<Message> batch;
  std::vector<Subscription> subs;
  {
    std::lock_guard lock(mu_);
    batch.swap(delivered_);
    subs = subscriptions_;
  }
  std::size_t calls = 0;
  for (const auto& m : batch) {
    for (const auto& s : subs) {
      if (topic_matches(s.filter, m.topic)) {
        s.handler(m);
        ++calls;
      }
    }
  }
  return calls;
}

bool MqttClient::wait_for_delivery(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  return cv_.wait_for(lock, timeout, [&] { return !delivered_.empty(); });
}

bool MqttClient::flush(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  return cv_.wait_for(lock, timeout, [&] { return inflight_.empty(); });
}

bool MqttClient::open_session(std::string& buffer) {
  const int fd = mqtt::connect_tcp(endpoint_.host, endpoint_.port, options_.connect_timeout);
  if (fd < 0) return false;
  {
    std::lock_guard lock(write_mu_);
    fd_ = fd;
  }
  if (!send(mqtt::connect_packet(client_id_, options_.keepalive_s))) return false;

  buffer.clear();
  const auto deadline = std::chrono::steady_clock::now() + options_.connect_timeout;
  while (std::chrono::steady_clock::now() < deadline && !stop_) {
    pollfd pfd{fd, POLLIN, 0};
    if (::poll(&pfd, 1, 100) <= 0) continue;
    char chunk[512];
    const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
    if (n <= 0) return false;
    buffer.append(chunk, static_cast<std::size_t>(n));
    if (auto p = mqtt::take_packet(buffer)) {
      if (p->type() != mqtt::PacketType::kConnack || p->body.size() < 2 || p->body[1] != 0) return false;
      break;
    }
  }
  if (stop_ || std::chrono::steady_clock::now() >= deadline) return false;

  std::lock_guard lock(mu_);
  for (const auto& s : subscriptions_) {
    const std::uint16_t id = next_packet_id();
    pending_subacks_[id] = false;
    send(mqtt::subscribe_packet(id, s.filter, 1));
  }
  for (auto& [id, p] : inflight_) {
    p.dup = true;
    send(mqtt::publish_packet(p));
  }
  connected_ = true;
  cv_.notify_all();
  // Whatever followed the CONNACK in the same read is handled by run().
  return true;
}

void MqttClient::drop_connection() {
  {
    std::lock_guard lock(mu_);
    connected_ = false;
    for (auto& [id, acked] : pending_subacks_) acked = false;
  }
  {
    std::lock_guard lock(write_mu_);
    mqtt::close_fd(fd_);
    fd_ = -1;
  }
  cv_.notify_all();
}

void MqttClient::handle(const mqtt::Packet& p) {
  switch (p.type()) {
    case mqtt::PacketType::kPublish: {
      auto fields = mqtt::parse_publish(p);
      if (fields.qos == 1) send(mqtt::puback_packet(fields.packet_id));
      std::lock_guard lock(mu_);
      delivered_.push_back({std::move(fields.topic), std::move(fields.payload), fields.retain});
      cv_.notify_all();
      break;
    }
    case mqtt::PacketType::kPuback: {
      mqtt::Reader r(p.body);
      std::lock_guard lock(mu_);
      inflight_.erase(r.u16());
      cv_.notify_all();
      break;
    }
    case mqtt::PacketType::kSuback: {
      mqtt::Reader r(p.body);
      std::lock_guard lock(mu_);
      const auto id = r.u16();
      if (auto it = pending_subacks_.find(id); it != pending_subacks_.end()) it->second = true;
      cv_.notify_all();
      break;
    }
    default:
      break;
  }
}

void MqttClient::run() {
  std::mt19937_64 rng(std::random_device{}());
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  unsigned attempt = 0;
  bool ever_connected = false;

  while (!stop_) {
    std::string buffer;
    if (!open_session(buffer)) {
      drop_connection();
      const auto delay = backoff_delay(attempt++, jitter(rng), options_.backoff_base, options_.backoff_cap);
      std::unique_lock lock(mu_);
      cv_.wait_for(lock, delay, [&] { return stop_.load(); });
      continue;
    }
    if (ever_connected) ++reconnects_;
    ever_connected = true;
    attempt = 0;
    while (auto p = mqtt::take_packet(buffer)) handle(*p);

    auto last_io = std::chrono::steady_clock::now();
    const auto ping_every = std::chrono::seconds(std::max<int>(1, options_.keepalive_s / 2));
    bool alive = true;
    while (!stop_ && alive) {
      pollfd pfd{fd_, POLLIN, 0};
      const int rc = ::poll(&pfd, 1, 100);
      if (rc > 0) {
        char chunk[4096];
        const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
        if (n <= 0) {
          alive = false;
          break;
        }
        buffer.append(chunk, static_cast<std::size_t>(n));
        try {
          while (auto p = mqtt::take_packet(buffer)) handle(*p);
        } catch (const Error&) {
          alive = false;
        }
        last_io = std::chrono::steady_clock::now();
      } else if (rc < 0 && errno != EINTR) {
        alive = false;
      }
      if (std::chrono::steady_clock::now() - last_io > ping_every) {
        alive = send(mqtt::pingreq_packet());
        last_io = std::chrono::steady_clock::now();
      }
    }
    if (!stop_) drop_connection();
  }
}

}  // namespace xri::bus
