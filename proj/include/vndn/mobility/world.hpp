#ifndef VNDN_MOBILITY_WORLD_HPP
#define VNDN_MOBILITY_WORLD_HPP

#include "vndn/mobility/mobility.hpp"
#include "vndn/mobility/routing.hpp"

#include <map>
#include <random>

namespace vndn::mobility {

struct Incident
{
  std::string edgeId;
  Time start{0};
  Time end{0};
  double speedFactor = 1.0; ///< (0, 1]
};

struct WorldConfig
{
  /// Target concurrent vehicles per km^2 of the map's bounding box; 0 disables spawning.
  double densityPerKm2 = 0;
  double emergencyRatio = 0;
  Duration statsWindow = DEFAULT_STATS_WINDOW;
  double headway = 1.5;   ///< seconds
  double minGap = 5.0;    ///< meters
};

/** \brief Native vehicle model.
 *
 *  Each vehicle drives at the edge's speed limit times any active incident factor. A vehicle
 *  closer to the one ahead in its lane than speed * headway + minGap takes the leader's speed
 *  instead, and never passes it. A vehicle cannot enter an edge whose last vehicle in the
 *  target lane is still within minGap of the entrance.
 */
class World : public Mobility
{
public:
  World(RoadGraph graph, WorldConfig config, uint64_t seed);

  void
  addIncident(Incident incident);

  /// Inserts a vehicle directly, bypassing the spawn policy.
  /// \throw RouteDiscontinuity, BadLane
  void
  addVehicle(const std::string& id, VehicleKind kind, std::vector<std::string> route, int lane = 0,
             double offset = 0);

  /// Concurrent vehicles the spawn policy maintains.
  size_t
  targetVehicleCount() const noexcept
  {
    return m_target;
  }

  /// Speed limit of \p edgeId times the incident factor in force at \p t.
  double
  effectiveSpeedLimit(const std::string& edgeId, Time t) const;

  StepEvents
  step(Duration dt) override;

  Time
  now() const override
  {
    return m_now;
  }

  const RoadGraph&
  graph() const override
  {
    return m_graph;
  }

  const Vehicle*
  findVehicle(const std::string& id) const override;

  std::vector<const Vehicle*>
  activeVehicles() const override;

  void
  setRoute(const std::string& vehicleId, const std::vector<std::string>& newRoute) override;

  void
  setLane(const std::string& vehicleId, int lane) override;

  TrafficWindowStats
  edgeStats(const std::string& edgeId, uint64_t window) const override
  {
    return m_stats.get(edgeId, window);
  }

  const std::vector<Trip>&
  completedTrips() const override
  {
    return m_trips;
  }

  uint64_t
  spawnedCount() const override
  {
    return m_spawned;
  }

private:
  Vehicle&
  vehicle(const std::string& id);

  void
  spawnUpToTarget(StepEvents& events);

  void
  updatePosition(Vehicle& v);

private:
  RoadGraph m_graph;
  WorldConfig m_config;
  std::mt19937_64 m_rng;
  TrafficStats m_stats;
  std::vector<Incident> m_incidents;
  std::vector<std::string> m_junctionIds;
  std::map<std::string, Vehicle> m_vehicles;
  std::vector<Trip> m_trips;
  Time m_now{0};
  size_t m_target = 0;
  uint64_t m_spawned = 0;
  uint64_t m_nextVehicle = 0;
};

} // namespace vndn::mobility

#endif // VNDN_MOBILITY_WORLD_HPP
