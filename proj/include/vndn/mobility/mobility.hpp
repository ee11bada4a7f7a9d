#ifndef VNDN_MOBILITY_MOBILITY_HPP
#define VNDN_MOBILITY_MOBILITY_HPP

#include "vndn/common.hpp"
#include "vndn/mobility/road-graph.hpp"
#include "vndn/mobility/traffic-stats.hpp"
#include "vndn/ndn/naming.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vndn::mobility {

using ndn::VehicleKind;

enum class VehicleColor : uint8_t {
  Default,
  /// Set when the vehicle adopts a new route.
  ReroutedBlue,
};

struct Vehicle
{
  std::string id;
  VehicleKind kind = VehicleKind::Passenger;
  std::vector<std::string> route;
  size_t routeIndex = 0;
  int lane = 0;         ///< 0 is the rightmost lane
  double offset = 0;    ///< meters from the start of the current edge
  double speed = 0;     ///< m/s
  Position position;
  Time departTime{0};
  std::optional<Time> arriveTime;
  VehicleColor color = VehicleColor::Default;
  uint32_t reroutes = 0;

  const std::string&
  currentEdge() const
  {
    return route.at(routeIndex);
  }

  const std::string&
  destinationEdge() const
  {
    return route.back();
  }
};

struct Trip
{
  std::string vehicleId;
  VehicleKind kind = VehicleKind::Passenger;
  Time departTime{0};
  Time arriveTime{0};
  uint32_t reroutes = 0;

  double
  travelTimeSeconds() const
  {
    return toSeconds(arriveTime - departTime);
  }
};

struct StepEvents
{
  std::vector<std::string> spawned;
  std::vector<std::string> arrived;
};

class RouteDiscontinuity : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class BadLane : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class UnknownVehicle : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class RerouteUnsupportedInReplay : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/** \brief The command/query surface between the road traffic model and the network side.
 *
 *  Implemented by the native vehicle model and by FCD trace replay.
 */
class Mobility
{
public:
  virtual
  ~Mobility() = default;

  /// Advances the clock by \p dt and reports vehicles that entered or left.
  virtual StepEvents
  step(Duration dt) = 0;

  virtual Time
  now() const = 0;

  virtual const RoadGraph&
  graph() const = 0;

  virtual const Vehicle*
  findVehicle(const std::string& id) const = 0;

  /// Active vehicles in id order.
  virtual std::vector<const Vehicle*>
  activeVehicles() const = 0;

  /// Replaces the route from the current edge onward.
  virtual void
  setRoute(const std::string& vehicleId, const std::vector<std::string>& newRoute) = 0;

  virtual void
  setLane(const std::string& vehicleId, int lane) = 0;

  virtual TrafficWindowStats
  edgeStats(const std::string& edgeId, uint64_t window) const = 0;

  virtual const std::vector<Trip>&
  completedTrips() const = 0;

  virtual uint64_t
  spawnedCount() const = 0;
};

} // namespace vndn::mobility

#endif // VNDN_MOBILITY_MOBILITY_HPP
