#ifndef VNDN_NDN_PACKET_HPP
#define VNDN_NDN_PACKET_HPP

#include "vndn/ndn/name.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace vndn::ndn {

inline constexpr std::chrono::milliseconds DEFAULT_INTEREST_LIFETIME{2000};

/// Largest payload a Data packet may carry; equal to the radio MTU.
inline constexpr size_t MAX_PAYLOAD_SIZE = 8192;

struct Interest
{
  Name name;
  uint32_t nonce = 0;
  std::chrono::milliseconds lifetime = DEFAULT_INTEREST_LIFETIME;
  bool canBePrefix = false;
  /// Transport-level; bumped each time the packet is received over the air.
  uint32_t hopCount = 0;

  friend bool
  operator==(const Interest&, const Interest&) = default;
};

struct Data
{
  Name name;
  std::string payload;
  std::chrono::milliseconds freshness{0};

  friend bool
  operator==(const Data&, const Data&) = default;
};

enum class NackReason : uint8_t {
  NoRoute = 1,
  Duplicate = 2,
  Congestion = 3,
};

std::string_view
toString(NackReason reason);

struct Nack
{
  NackReason reason = NackReason::NoRoute;
  Interest interest;

  friend bool
  operator==(const Nack&, const Nack&) = default;
};

using Packet = std::variant<Interest, Data, Nack>;

enum class PacketType : uint8_t {
  Interest = 1,
  Data = 2,
  Nack = 3,
};

PacketType
getType(const Packet& packet) noexcept;

std::string_view
toString(PacketType type);

const Name&
getName(const Packet& packet) noexcept;

} // namespace vndn::ndn

#endif // VNDN_NDN_PACKET_HPP
