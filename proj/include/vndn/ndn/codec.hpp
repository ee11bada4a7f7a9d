#ifndef VNDN_NDN_CODEC_HPP
#define VNDN_NDN_CODEC_HPP

#include "vndn/ndn/packet.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace vndn::ndn {

using Buffer = std::vector<uint8_t>;

/**
 * Wire layout (all integers little-endian, fixed width):
 *
 *   packet   := type:u8 body
 *   name     := count:u16 { len:u8 bytes[len] }*
 *   Interest := name nonce:u32 lifetime_ms:u32 can_be_prefix:u8 hop_count:u32
 *   Data     := name payload_len:u32 payload[payload_len] freshness_ms:u32
 *   Nack     := reason:u8 Interest
 *
 * type is 1 for Interest, 2 for Data, 3 for Nack. Every field's length is either fixed
 * or given by a preceding length prefix, so the encoding is canonical.
 */
Buffer
encodePacket(const Packet& packet);

class DecodeError : public std::runtime_error
{
public:
  enum class Code {
    Truncated,
    UnknownType,
    /// Structurally complete but violates a field invariant (empty component, bad enum, trailing bytes).
    Malformed,
  };

  DecodeError(Code code, const std::string& what)
    : std::runtime_error(what)
    , m_code(code)
  {
  }

  Code
  code() const noexcept
  {
    return m_code;
  }

private:
  Code m_code;
};

Packet
decodePacket(std::span<const uint8_t> wire);

} // namespace vndn::ndn

#endif // VNDN_NDN_CODEC_HPP
