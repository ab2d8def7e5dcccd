#include "xri/bus/mqtt_wire.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "xri/core/error.hpp"

namespace xri::bus::mqtt {

namespace {

[[noreturn]] void truncated() { throw Error(ErrorCode::kParseError, "mqtt", "truncated packet"); }

std::string encode_length(std::size_t n) {
  std::string out;
  do {
    auto byte = static_cast<std::uint8_t>(n % 128);
    n /= 128;
    if (n > 0) byte |= 0x80;
    out.push_back(static_cast<char>(byte));
  } while (n > 0);
  return out;
}

}  // namespace

std::uint8_t Reader::u8() {
  if (pos_ + 1 > data_.size()) truncated();
  return static_cast<std::uint8_t>(data_[pos_++]);
}

std::uint16_t Reader::u16() {
  const std::uint16_t hi = u8();
  const std::uint16_t lo = u8();
  return static_cast<std::uint16_t>(hi << 8 | lo);
}

std::string Reader::str() {
  const std::size_t n = u16();
  if (pos_ + n > data_.size()) truncated();
  std::string out(data_.substr(pos_, n));
  pos_ += n;
  return out;
}

std::string Reader::rest() {
  std::string out(data_.substr(pos_));
  pos_ = data_.size();
  return out;
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v & 0xFF));
}

void put_str(std::string& out, std::string_view s) {
  put_u16(out, static_cast<std::uint16_t>(s.size()));
  out.append(s);
}

std::string frame(std::uint8_t header, std::string_view body) {
  std::string out(1, static_cast<char>(header));
  out += encode_length(body.size());
  out.append(body);
  return out;
}

std::optional<Packet> take_packet(std::string& buffer) {
  if (buffer.size() < 2) return std::nullopt;
  std::size_t length = 0;
  std::size_t multiplier = 1;
  std::size_t i = 1;
  while (true) {
    if (i >= buffer.size()) return std::nullopt;
    if (i > 4) throw Error(ErrorCode::kParseError, "mqtt", "remaining length too long");
    const auto byte = static_cast<std::uint8_t>(buffer[i]);
    length += (byte & 0x7F) * multiplier;
    multiplier *= 128;
    ++i;
    if ((byte & 0x80) == 0) break;
  }
  if (buffer.size() < i + length) return std::nullopt;
  Packet p{static_cast<std::uint8_t>(buffer[0]), buffer.substr(i, length)};
  buffer.erase(0, i + length);
  return p;
}

std::string connect_packet(std::string_view client_id, std::uint16_t keepalive_s) {
  std::string body;
  put_str(body, "MQTT");
  body.push_back(4);     // protocol level 3.1.1
  body.push_back(0x02);  // clean session
  put_u16(body, keepalive_s);
  put_str(body, client_id);
  return frame(0x10, body);
}

std::string connack_packet(std::uint8_t return_code) {
  std::string body(1, '\0');
  body.push_back(static_cast<char>(return_code));
  return frame(0x20, body);
}

std::string publish_packet(const PublishFields& p) {
  std::uint8_t header = 0x30;
  if (p.dup) header |= 0x08;
  header |= static_cast<std::uint8_t>((p.qos & 0x03) << 1);
  if (p.retain) header |= 0x01;
  std::string body;
  put_str(body, p.topic);
  if (p.qos > 0) put_u16(body, p.packet_id);
  body += p.payload;
  return frame(header, body);
}

PublishFields parse_publish(const Packet& packet) {
  PublishFields p;
  p.dup = packet.flags() & 0x08;
  p.qos = (packet.flags() >> 1) & 0x03;
  p.retain = packet.flags() & 0x01;
  Reader r(packet.body);
  p.topic = r.str();
  if (p.qos > 0) p.packet_id = r.u16();
  p.payload = r.rest();
  return p;
}

std::string puback_packet(std::uint16_t packet_id) {
  std::string body;
  put_u16(body, packet_id);
  return frame(0x40, body);
}

std::string subscribe_packet(std::uint16_t packet_id, std::string_view filter, std::uint8_t qos) {
  std::string body;
  put_u16(body, packet_id);
  put_str(body, filter);
  body.push_back(static_cast<char>(qos));
  return frame(0x82, body);
}

std::string suback_packet(std::uint16_t packet_id, std::uint8_t granted_qos) {
  std::string body;
  put_u16(body, packet_id);
  body.push_back(static_cast<char>(granted_qos));
  return frame(0x90, body);
}

std::string pingreq_packet() { return frame(0xC0, {}); }
std::string pingresp_packet() { return frame(0xD0, {}); }
std::string disconnect_packet() { return frame(0xE0, {}); }

int connect_tcp(const std::string& host, std::uint16_t port, std::chrono::milliseconds timeout) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0) return -1;

  int fd = -1;
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    const int flags = ::fcntl(fd, F_GETFL, 0);
    ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
    int rc = ::connect(fd, ai->ai_addr, ai->ai_addrlen);
    if (rc < 0 && errno == EINPROGRESS) {
      pollfd pfd{fd, POLLOUT, 0};
      rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
      int err = 0;
      socklen_t len = sizeof err;
      if (rc == 1 && ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len) == 0 && err == 0) rc = 0;
      else rc = -1;
    }
    if (rc == 0) {
      ::fcntl(fd, F_SETFL, flags);
      const int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      break;
    }
    ::close(fd);
    fd = -1;
  }
  freeaddrinfo(res);
  return fd;
}

bool send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

void close_fd(int fd) {
  if (fd >= 0) {
    ::shutdown(fd, SHUT_RDWR);
    ::close(fd);
  }
}

}  // namespace xri::bus::mqtt
