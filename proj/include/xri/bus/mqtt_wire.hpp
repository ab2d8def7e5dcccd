#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// Just enough of MQTT 3.1.1 framing for QoS 0/1 publish/subscribe.
namespace xri::bus::mqtt {

enum class PacketType : std::uint8_t {
  kConnect = 1,
  kConnack = 2,
  kPublish = 3,
  kPuback = 4,
  kSubscribe = 8,
  kSuback = 9,
  kPingreq = 12,
  kPingresp = 13,
  kDisconnect = 14,
};

struct Packet {
  std::uint8_t header = 0;
  std::string body;

  PacketType type() const { return static_cast<PacketType>(header >> 4); }
  std::uint8_t flags() const { return header & 0x0F; }
};

struct PublishFields {
  std::string topic;
  std::string payload;
  std::uint8_t qos = 0;
  bool retain = false;
  bool dup = false;
  std::uint16_t packet_id = 0;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}
  std::uint8_t u8();
  std::uint16_t u16();
  std::string str();
  std::string rest();
  bool done() const { return pos_ >= data_.size(); }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

void put_u16(std::string& out, std::uint16_t v);
void put_str(std::string& out, std::string_view s);
std::string frame(std::uint8_t header, std::string_view body);

// Removes one complete packet from the front of `buffer`, if present.
// Throws Error(kParseError) on a malformed length prefix.
std::optional<Packet> take_packet(std::string& buffer);

std::string connect_packet(std::string_view client_id, std::uint16_t keepalive_s);
std::string connack_packet(std::uint8_t return_code);
std::string publish_packet(const PublishFields& p);
PublishFields parse_publish(const Packet& packet);
std::string puback_packet(std::uint16_t packet_id);
std::string subscribe_packet(std::uint16_t packet_id, std::string_view filter, std::uint8_t qos);
std::string suback_packet(std::uint16_t packet_id, std::uint8_t granted_qos);
std::string pingreq_packet();
std::string pingresp_packet();
std::string disconnect_packet();

// Blocking TCP helpers. connect_tcp returns -1 on failure.
int connect_tcp(const std::string& host, std::uint16_t port, std::chrono::milliseconds timeout);
bool send_all(int fd, std::string_view data);
void close_fd(int fd);

}  // namespace xri::bus::mqtt
