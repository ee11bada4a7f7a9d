#ifndef VNDN_NDN_NAMING_HPP
#define VNDN_NDN_NAMING_HPP

#include "vndn/ndn/name.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vndn::ndn {

enum class VehicleKind : uint8_t {
  Passenger,
  Emergency,
};

std::string_view
toString(VehicleKind kind);

/// \throw std::invalid_argument on an unknown kind
VehicleKind
parseVehicleKind(std::string_view text);

/// What a vehicle announces about itself in a safety beacon.
struct BeaconInfo
{
  std::string nodeId;
  VehicleKind kind = VehicleKind::Passenger;
  std::string roadId;
  double x = 0;
  double y = 0;
  double z = 0;
  double speed = 0;

  friend bool
  operator==(const BeaconInfo&, const BeaconInfo&) = default;
};

class NamingError : public std::invalid_argument
{
public:
  enum class Code {
    NotABeacon,
    NotTraffic,
    BadNumber,
  };

  NamingError(Code code, const std::string& what)
    : std::invalid_argument(what)
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

inline constexpr size_t BEACON_NAME_SIZE = 9;
inline constexpr size_t TRAFFIC_NAME_SIZE = 4;

/// Shortest decimal text of \p value rounded to two fractional digits ("12.5", "3", "0").
std::string
formatDecimal(double value);

/// /localhop/beacon/<node-id>/<kind>/<road-id>/<x>/<y>/<z>/<speed>
Name
makeBeaconName(const BeaconInfo& info);

BeaconInfo
parseBeaconName(const Name& name);

/// The prefix every beacon name starts with, /localhop/beacon.
const Name&
beaconPrefix();

/// /service/traffic/<road-id>/<window>
Name
makeTrafficName(const std::string& roadId, uint64_t window);

struct TrafficQuery
{
  std::string roadId;
  uint64_t window = 0;

  friend bool
  operator==(const TrafficQuery&, const TrafficQuery&) = default;
};

TrafficQuery
parseTrafficName(const Name& name);

/// /service/traffic
const Name&
trafficPrefix();

/// The scope component that confines an Interest to a single wireless hop.
inline constexpr std::string_view LOCALHOP = "localhop";

inline bool
isLocalhop(const Name& name)
{
  return !name.empty() && name[0] == LOCALHOP;
}

} // namespace vndn::ndn

#endif // VNDN_NDN_NAMING_HPP
