#include "vndn/ndn/codec.hpp"

#include <limits>

namespace vndn::ndn {

namespace {

class Writer
{
public:
  void
  u8(uint8_t v)
  {
    m_buf.push_back(v);
  }

  void
  u16(uint16_t v)
  {
    for (int i = 0; i < 2; ++i)
      m_buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }

  void
  u32(uint32_t v)
  {
    for (int i = 0; i < 4; ++i)
      m_buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }

  void
  bytes(std::string_view s)
  {
    m_buf.insert(m_buf.end(), s.begin(), s.end());
  }

  void
  name(const Name& n)
  {
    if (n.size() > std::numeric_limits<uint16_t>::max()) {
      throw std::length_error("name has too many components to encode");
    }
    u16(static_cast<uint16_t>(n.size()));
    for (const auto& c : n.components()) {
      u8(static_cast<uint8_t>(c.size()));
      bytes(c);
    }
  }

  void
  interest(const Interest& i)
  {
    name(i.name);
    u32(i.nonce);
    u32(static_cast<uint32_t>(i.lifetime.count()));
    u8(i.canBePrefix ? 1 : 0);
    u32(i.hopCount);
  }

  Buffer
  release()
  {
    return std::move(m_buf);
  }

private:
  Buffer m_buf;
};

class Reader
{
public:
  explicit
  Reader(std::span<const uint8_t> wire)
    : m_wire(wire)
  {
  }

  uint8_t
  u8()
  {
    need(1);
    return m_wire[m_pos++];
  }

  uint16_t
  u16()
  {
    need(2);
    uint16_t v = static_cast<uint16_t>(m_wire[m_pos] | (m_wire[m_pos + 1] << 8));
    m_pos += 2;
    return v;
  }

  uint32_t
  u32()
  {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<uint32_t>(m_wire[m_pos + i]) << (8 * i);
    m_pos += 4;
    return v;
  }

  std::string
  bytes(size_t n)
  {
    need(n);
    std::string s(reinterpret_cast<const char*>(m_wire.data() + m_pos), n);
    m_pos += n;
    return s;
  }

  Name
  name()
  {
    uint16_t count = u16();
    if (count == 0) {
      throw DecodeError(DecodeError::Code::Malformed, "encoded name has no components");
    }
    std::vector<std::string> components;
    components.reserve(count);
    for (uint16_t k = 0; k < count; ++k) {
      uint8_t len = u8();
      if (len == 0) {
        throw DecodeError(DecodeError::Code::Malformed, "encoded name has an empty component");
      }
      components.push_back(bytes(len));
    }
    return Name(std::move(components));
  }

  Interest
  interest()
  {
    Interest i;
    i.name = name();
    i.nonce = u32();
    i.lifetime = std::chrono::milliseconds(u32());
    uint8_t flag = u8();
    if (flag > 1) {
      throw DecodeError(DecodeError::Code::Malformed, "can_be_prefix flag is not 0 or 1");
    }
    i.canBePrefix = flag == 1;
    i.hopCount = u32();
    if (i.lifetime.count() == 0) {
      throw DecodeError(DecodeError::Code::Malformed, "interest lifetime is zero");
    }
    return i;
  }

  void
  expectEnd() const
  {
    if (m_pos != m_wire.size()) {
      throw DecodeError(DecodeError::Code::Malformed,
                        std::to_string(m_wire.size() - m_pos) + " trailing bytes after packet");
    }
  }

private:
  void
  need(size_t n) const
  {
    if (m_wire.size() - m_pos < n) {
      throw DecodeError(DecodeError::Code::Truncated,
                        "packet truncated at offset " + std::to_string(m_pos));
    }
  }

private:
  std::span<const uint8_t> m_wire;
  size_t m_pos = 0;
};

} // namespace

Buffer
encodePacket(const Packet& packet)
{
  Writer w;
  w.u8(static_cast<uint8_t>(getType(packet)));
  if (const auto* interest = std::get_if<Interest>(&packet)) {
    w.interest(*interest);
  }
  else if (const auto* data = std::get_if<Data>(&packet)) {
    if (data->payload.size() > MAX_PAYLOAD_SIZE) {
      throw std::length_error("data payload exceeds " + std::to_string(MAX_PAYLOAD_SIZE) + " bytes");
    }
    w.name(data->name);
    w.u32(static_cast<uint32_t>(data->payload.size()));
    w.bytes(data->payload);
    w.u32(static_cast<uint32_t>(data->freshness.count()));
  }
  else {
    const auto& nack = std::get<Nack>(packet);
    w.u8(static_cast<uint8_t>(nack.reason));
    w.interest(nack.interest);
  }
  return w.release();
}

Packet
decodePacket(std::span<const uint8_t> wire)
{
  Reader r(wire);
  uint8_t type = r.u8();
  Packet packet;
  switch (type) {
  case static_cast<uint8_t>(PacketType::Interest):
    packet = r.interest();
    break;
  case static_cast<uint8_t>(PacketType::Data): {
    Data data;
    data.name = r.name();
    uint32_t len = r.u32();
    if (len > MAX_PAYLOAD_SIZE) {
      throw DecodeError(DecodeError::Code::Malformed, "payload length exceeds maximum");
    }
    data.payload = r.bytes(len);
    data.freshness = std::chrono::milliseconds(r.u32());
    packet = std::move(data);
    break;
  }
  case static_cast<uint8_t>(PacketType::Nack): {
    Nack nack;
    uint8_t reason = r.u8();
    if (reason < 1 || reason > 3) {
      throw DecodeError(DecodeError::Code::Malformed, "unknown nack reason " + std::to_string(reason));
    }
    nack.reason = static_cast<NackReason>(reason);
    nack.interest = r.interest();
    packet = std::move(nack);
    break;
  }
  default:
    throw DecodeError(DecodeError::Code::UnknownType, "unknown packet type " + std::to_string(type));
  }
  r.expectEnd();
  return packet;
}

} // namespace vndn::ndn
