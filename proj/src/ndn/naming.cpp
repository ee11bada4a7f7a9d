#include "vndn/ndn/naming.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace vndn::ndn {

std::string_view
toString(VehicleKind kind)
{
  return kind == VehicleKind::Emergency ? "emergency" : "passenger";
}

VehicleKind
parseVehicleKind(std::string_view text)
{
  if (text == "passenger")
    return VehicleKind::Passenger;
  if (text == "emergency")
    return VehicleKind::Emergency;
  throw std::invalid_argument("unknown vehicle kind '" + std::string(text) + "'");
}

std::string
formatDecimal(double value)
{
  double rounded = std::round(value * 100.0) / 100.0;
  if (rounded == 0.0) {
    return "0"; // also folds -0
  }
  char buf[64];
  int n = std::snprintf(buf, sizeof(buf), "%.2f", rounded);
  std::string text(buf, static_cast<size_t>(n));
  while (text.back() == '0')
    text.pop_back();
  if (text.back() == '.')
    text.pop_back();
  return text;
}

namespace {

double
parseNumber(const std::string& text)
{
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw NamingError(NamingError::Code::BadNumber, "'" + text + "' is not a decimal number");
  }
  return value;
}

} // namespace

const Name&
beaconPrefix()
{
  static const Name prefix{"localhop", "beacon"};
  return prefix;
}

Name
makeBeaconName(const BeaconInfo& info)
{
  return Name({"localhop", "beacon", info.nodeId, std::string(toString(info.kind)), info.roadId,
               formatDecimal(info.x), formatDecimal(info.y), formatDecimal(info.z),
               formatDecimal(info.speed)});
}

BeaconInfo
parseBeaconName(const Name& name)
{
  if (name.size() != BEACON_NAME_SIZE || !beaconPrefix().isPrefixOf(name)) {
    throw NamingError(NamingError::Code::NotABeacon, name.toUri() + " is not a beacon name");
  }
  BeaconInfo info;
  info.nodeId = name[2];
  try {
    info.kind = parseVehicleKind(name[3]);
  }
  catch (const std::invalid_argument&) {
    throw NamingError(NamingError::Code::NotABeacon,
                      name.toUri() + " carries unknown vehicle kind '" + name[3] + "'");
  }
  info.roadId = name[4];
  info.x = parseNumber(name[5]);
  info.y = parseNumber(name[6]);
  info.z = parseNumber(name[7]);
  info.speed = parseNumber(name[8]);
  if (info.speed < 0) {
    throw NamingError(NamingError::Code::BadNumber, name.toUri() + " carries a negative speed");
  }
  return info;
}

const Name&
trafficPrefix()
{
  static const Name prefix{"service", "traffic"};
  return prefix;
}

Name
makeTrafficName(const std::string& roadId, uint64_t window)
{
  return Name({"service", "traffic", roadId, std::to_string(window)});
}

TrafficQuery
parseTrafficName(const Name& name)
{
  if (name.size() != TRAFFIC_NAME_SIZE || !trafficPrefix().isPrefixOf(name)) {
    throw NamingError(NamingError::Code::NotTraffic, name.toUri() + " is not a traffic name");
  }
  TrafficQuery query;
  query.roadId = name[2];
  const std::string& w = name[3];
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), query.window);
  if (ec != std::errc() || ptr != w.data() + w.size()) {
    throw NamingError(NamingError::Code::NotTraffic, "'" + w + "' is not a window index");
  }
  return query;
}

} // namespace vndn::ndn
