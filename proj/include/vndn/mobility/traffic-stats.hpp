#ifndef VNDN_MOBILITY_TRAFFIC_STATS_HPP
#define VNDN_MOBILITY_TRAFFIC_STATS_HPP

#include "vndn/common.hpp"
#include "vndn/mobility/road-graph.hpp"

#include <map>
#include <string>
#include <utility>

namespace vndn::mobility {

inline constexpr Duration DEFAULT_STATS_WINDOW = std::chrono::seconds(30);

/// Road space one queued vehicle occupies: 5 m of car plus 2.5 m of gap.
inline constexpr double VEHICLE_SLOT_LENGTH = 7.5;

struct TrafficWindowStats
{
  std::string edgeId;
  uint64_t window = 0;
  double meanSpeed = 0;  ///< m/s
  double occupancy = 0;  ///< [0, 1]
  uint64_t sampleCount = 0;
};

class UnknownEdge : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

constexpr uint64_t
windowIndex(Time t, Duration window)
{
  return static_cast<uint64_t>(t / window);
}

/** \brief Per-edge, per-window congestion estimates integrated from vehicle samples.
 *
 *  mean speed = time-weighted mean over vehicles on the edge (the speed limit when empty);
 *  occupancy  = vehicle-seconds / (window length * lanes * length / VEHICLE_SLOT_LENGTH).
 */
class TrafficStats
{
public:
  explicit
  TrafficStats(const RoadGraph& graph, Duration window = DEFAULT_STATS_WINDOW);

  /// One vehicle spent [begin, begin + dt) on \p edgeId at \p speed. Spans crossing a window
  /// boundary are split.
  void
  addSample(const std::string& edgeId, Time begin, Duration dt, double speed);

  /// \throw UnknownEdge
  TrafficWindowStats
  get(const std::string& edgeId, uint64_t window) const;

  Duration
  windowLength() const noexcept
  {
    return m_window;
  }

private:
  struct Accumulator
  {
    double speedSeconds = 0;
    double vehicleSeconds = 0;
    uint64_t samples = 0;
  };

  const RoadGraph& m_graph;
  Duration m_window;
  std::map<std::pair<std::string, uint64_t>, Accumulator> m_acc;
};

} // namespace vndn::mobility

#endif // VNDN_MOBILITY_TRAFFIC_STATS_HPP
