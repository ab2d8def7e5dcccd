#include "mini_broker.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <stdexcept>
#include <vector>

#include "xri/bus/mqtt_wire.hpp"
#include "xri/bus/topic.hpp"

namespace xri::testing {

namespace mqtt = bus::mqtt;

namespace {

struct Client {
  int fd = -1;
  std::string buffer;
  std::vector<std::string> filters;
  std::uint16_t next_id = 0;
};

int open_listener(std::uint16_t& port) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw std::runtime_error("socket");
  int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(fd, 16) != 0) {
    ::close(fd);
    throw std::runtime_error("bind/listen on port " + std::to_string(port));
  }
  socklen_t len = sizeof addr;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  port = ntohs(addr.sin_port);
  return fd;
}

}  // namespace

MiniBroker::MiniBroker(std::uint16_t port) : port_(port) { start(); }

MiniBroker::~MiniBroker() { stop(); }

void MiniBroker::start() {
  if (worker_.joinable()) return;
  int listen_fd = open_listener(port_);
  int pipe_fds[2];
  if (::pipe(pipe_fds) != 0) throw std::runtime_error("pipe");
  wake_write_ = pipe_fds[1];
  worker_ = std::thread([this, listen_fd, r = pipe_fds[0]] { loop(listen_fd, r); });
}

void MiniBroker::stop() {
  if (!worker_.joinable()) return;
  char c = 0;
  (void)!::write(wake_write_, &c, 1);
  worker_.join();
  ::close(wake_write_);
  wake_write_ = -1;
}

void MiniBroker::loop(int listen_fd, int wake_fd) {
  std::vector<Client> clients;

  auto deliver = [](Client& to, const std::string& topic, const std::string& payload, bool retain) {
    mqtt::PublishFields f;
    f.topic = topic;
    f.payload = payload;
    f.qos = 1;
    f.retain = retain;
    f.packet_id = ++to.next_id == 0 ? ++to.next_id : to.next_id;
    mqtt::send_all(to.fd, mqtt::publish_packet(f));
  };

  auto handle = [&](Client& c, const mqtt::Packet& p) -> bool {
    switch (p.type()) {
      case mqtt::PacketType::kConnect:
        return mqtt::send_all(c.fd, mqtt::connack_packet(0));
      case mqtt::PacketType::kPingreq:
        return mqtt::send_all(c.fd, mqtt::pingresp_packet());
      case mqtt::PacketType::kDisconnect:
        return false;
      case mqtt::PacketType::kSubscribe: {
        mqtt::Reader r(p.body);
        const auto id = r.u16();
        std::vector<std::string> added;
        while (!r.done()) {
          added.push_back(r.str());
          r.u8();
        }
        std::string body;
        mqtt::put_u16(body, id);
        for (std::size_t i = 0; i < added.size(); ++i) body.push_back(1);
        if (!mqtt::send_all(c.fd, mqtt::frame(0x90, body))) return false;
        std::lock_guard lock(retained_mu_);
        for (const auto& filter : added) {
          c.filters.push_back(filter);
          for (const auto& [topic, payload] : retained_) {
            if (bus::topic_matches(filter, topic)) deliver(c, topic, payload, true);
          }
        }
        return true;
      }
      case mqtt::PacketType::kPublish: {
        auto f = mqtt::parse_publish(p);
        ++publishes_;
        if (f.qos == 1 && !mqtt::send_all(c.fd, mqtt::puback_packet(f.packet_id))) return false;
        if (f.retain) {
          std::lock_guard lock(retained_mu_);
          if (f.payload.empty()) {
            retained_.erase(f.topic);
          } else {
            retained_[f.topic] = f.payload;
          }
        }
        for (auto& other : clients) {
          for (const auto& filter : other.filters) {
            if (bus::topic_matches(filter, f.topic)) {
              deliver(other, f.topic, f.payload, false);
              break;
            }
          }
        }
        return true;
      }
      default:
        return true;
    }
  };

  while (true) {
    std::vector<pollfd> fds{{listen_fd, POLLIN, 0}, {wake_fd, POLLIN, 0}};
    for (const auto& c : clients) fds.push_back({c.fd, POLLIN, 0});
    if (::poll(fds.data(), fds.size(), -1) < 0) continue;
    if (fds[1].revents) break;
    if (fds[0].revents & POLLIN) {
      int fd = ::accept(listen_fd, nullptr, nullptr);
      if (fd >= 0) {
        ++connections_;
        clients.push_back({fd, {}, {}, 0});
      }
    }
    std::vector<int> dead;
    for (std::size_t i = 2; i < fds.size(); ++i) {
      if (!fds[i].revents) continue;
      Client* c = nullptr;
      for (auto& candidate : clients) {
        if (candidate.fd == fds[i].fd) c = &candidate;
      }
      char chunk[4096];
      const auto n = ::recv(fds[i].fd, chunk, sizeof chunk, 0);
      bool alive = n > 0;
      if (alive) {
        c->buffer.append(chunk, static_cast<std::size_t>(n));
        try {
          while (alive) {
            auto packet = mqtt::take_packet(c->buffer);
            if (!packet) break;
            alive = handle(*c, *packet);
          }
        } catch (const std::exception&) {
          alive = false;
        }
      }
      if (!alive) dead.push_back(fds[i].fd);
    }
    for (int fd : dead) {
      ::close(fd);
      std::erase_if(clients, [fd](const Client& c) { return c.fd == fd; });
    }
  }
  for (const auto& c : clients) ::close(c.fd);
  ::close(listen_fd);
  ::close(wake_fd);
}

}  // namespace xri::testing
