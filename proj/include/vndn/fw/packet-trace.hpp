#ifndef VNDN_FW_PACKET_TRACE_HPP
#define VNDN_FW_PACKET_TRACE_HPP

#include "vndn/common.hpp"
#include "vndn/table/face.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace vndn::fw {

enum class TraceDirection : uint8_t {
  Tx,
  Rx,
  /// An outcome reported to a consumer application.
  Event,
};

/** One line of the packet trace:
 *
 *    time_ms node_id face_kind dir pkt_type name nonce verdict
 *
 *  time_ms has six fractional digits; face_kind is "app" or "wireless"; dir is "tx", "rx" or
 *  "ev"; pkt_type is "interest", "data" or "nack"; nonce is decimal or "-" for Data.
 */
struct TraceRecord
{
  Time time{0};
  NodeId node = 0;
  table::FaceKind faceKind = table::FaceKind::App;
  TraceDirection dir = TraceDirection::Tx;
  std::string packetType;
  std::string name;
  std::optional<uint32_t> nonce;
  std::string verdict;

  friend bool
  operator==(const TraceRecord&, const TraceRecord&) = default;
};

std::string
formatTraceLine(const TraceRecord& record);

/// \throw std::invalid_argument on a malformed line
TraceRecord
parseTraceLine(std::string_view line);

/// In-memory packet trace. Records keep their insertion order.
class PacketTrace
{
public:
  size_t
  add(TraceRecord record);

  void
  setVerdict(size_t index, std::string_view verdict);

  const std::vector<TraceRecord>&
  records() const noexcept
  {
    return m_records;
  }

  size_t
  size() const noexcept
  {
    return m_records.size();
  }

  void
  write(std::ostream& os) const;

private:
  std::vector<TraceRecord> m_records;
};

} // namespace vndn::fw

#endif // VNDN_FW_PACKET_TRACE_HPP
