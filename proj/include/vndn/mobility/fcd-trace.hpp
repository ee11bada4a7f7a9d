#ifndef VNDN_MOBILITY_FCD_TRACE_HPP
#define VNDN_MOBILITY_FCD_TRACE_HPP

#include "vndn/mobility/mobility.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <string_view>

namespace vndn::mobility {

class ParseError : public std::runtime_error
{
public:
  ParseError(size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message)
    , m_line(line)
  {
  }

  size_t
  line() const noexcept
  {
    return m_line;
  }

private:
  size_t m_line;
};

struct FcdSample
{
  std::string vehicleId;
  double x = 0;
  double y = 0;
  double speed = 0;
  std::string lane; ///< SUMO lane id "<edge>_<index>", may be empty
};

struct FcdTimestep
{
  Time time{0};
  std::vector<FcdSample> vehicles;
};

/// Parsed SUMO fcd-output: <fcd-export><timestep time="T"><vehicle id x y speed lane/>...
struct FcdTrace
{
  std::vector<FcdTimestep> timesteps;

  /// \throw ParseError naming the offending line
  static FcdTrace
  parse(std::string_view xml);

  static FcdTrace
  load(const std::filesystem::path& file);
};

/// Splits "edge_2" into ("edge", 2); a lane id without a numeric suffix maps to lane 0.
std::pair<std::string, int>
splitLaneId(const std::string& laneId);

/** \brief Mobility driven by a recorded trace.
 *
 *  Positions are linearly interpolated between a vehicle's consecutive samples. A vehicle
 *  appears at its first sample and leaves at the first timestep after its last sample.
 *  Route and lane commands are rejected.
 */
class ReplayWorld : public Mobility
{
public:
  ReplayWorld(FcdTrace trace, RoadGraph graph, Duration statsWindow = DEFAULT_STATS_WINDOW);

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

  /// When the vehicle leaves, or nullopt if it is still present at the end of the trace.
  std::optional<Time>
  departureFromTrace(const std::string& vehicleId) const;

private:
  struct Track
  {
    std::vector<std::pair<Time, FcdSample>> samples;
    std::optional<Time> leaveTime;
  };

  void
  place(Vehicle& v, const Track& track, Time t) const;

private:
  RoadGraph m_graph;
  TrafficStats m_stats;
  std::map<std::string, Track> m_tracks;
  std::map<std::string, Vehicle> m_active;
  std::set<std::string> m_finished;
  std::vector<Trip> m_trips;
  Time m_now{0};
  uint64_t m_spawned = 0;
};

} // namespace vndn::mobility

#endif // VNDN_MOBILITY_FCD_TRACE_HPP
