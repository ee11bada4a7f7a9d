#include "vndn/ndn/packet.hpp"

namespace vndn::ndn {

std::string_view
toString(NackReason reason)
{
  switch (reason) {
  case NackReason::NoRoute:
    return "NoRoute";
  case NackReason::Duplicate:
    return "Duplicate";
  case NackReason::Congestion:
    return "Congestion";
  }
  return "Unknown";
}

PacketType
getType(const Packet& packet) noexcept
{
  return static_cast<PacketType>(packet.index() + 1);
}

std::string_view
toString(PacketType type)
{
  switch (type) {
  case PacketType::Interest:
    return "interest";
  case PacketType::Data:
    return "data";
  case PacketType::Nack:
    return "nack";
  }
  return "unknown";
}

const Name&
getName(const Packet& packet) noexcept
{
  struct
  {
    const Name& operator()(const Interest& i) const { return i.name; }
    const Name& operator()(const Data& d) const { return d.name; }
    const Name& operator()(const Nack& n) const { return n.interest.name; }
  } visitor;
  return std::visit(visitor, packet);
}

} // namespace vndn::ndn
