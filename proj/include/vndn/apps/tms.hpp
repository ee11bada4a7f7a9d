#ifndef VNDN_APPS_TMS_HPP
#define VNDN_APPS_TMS_HPP

#include "vndn/mobility/road-graph.hpp"
#include "vndn/mobility/routing.hpp"
#include "vndn/mobility/traffic-stats.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vndn::apps {

struct TmsConfig
{
  Duration queryInterval = std::chrono::milliseconds(5000);
  double congestionSpeedRatio = 0.5; ///< theta_v
  double congestionOccupancy = 0.8;  ///< theta_o
  double improvementMargin = 0.10;
  Duration window = std::chrono::milliseconds(30000);
  Duration interestLifetime = std::chrono::milliseconds(2000);
  bool rerouting = true;

  /// \throw std::invalid_argument naming the offending field
  void
  validate() const;

  Duration
  stalenessHorizon() const noexcept
  {
    return 2 * window;
  }
};

class MalformedPayload : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// {"road": ..., "window": ..., "meanSpeed": ..., "occupancy": ..., "sampleCount": ...}
std::string
encodeTrafficPayload(const mobility::TrafficWindowStats& stats);

/// Unknown keys are ignored. \throw MalformedPayload on bad JSON, missing keys or wrong types
mobility::TrafficWindowStats
decodeTrafficPayload(std::string_view payload);

/// What one vehicle currently believes about the roads, from Data it received.
class TrafficView
{
public:
  struct Entry
  {
    mobility::TrafficWindowStats stats;
    Time receivedAt{0};
  };

  explicit
  TrafficView(Duration staleness)
    : m_staleness(staleness)
  {
  }

  void
  update(const mobility::TrafficWindowStats& stats, Time now);

  /// Entry received less than the staleness horizon ago, else nullptr.
  const Entry*
  fresh(const std::string& edgeId, Time now) const;

  size_t
  size() const noexcept
  {
    return m_entries.size();
  }

private:
  Duration m_staleness;
  std::map<std::string, Entry> m_entries;
};

bool
isCongested(const mobility::TrafficWindowStats& stats, const mobility::Edge& edge,
            const TmsConfig& config);

/// length / min(limit, max(mean speed, 1 m/s)) with fresh data, free-flow time without.
double
congestionWeight(const mobility::Edge& edge, const TrafficView& view, Time now);

struct RerouteDecision
{
  bool congestionAhead = false;
  double currentCost = 0;
  double alternativeCost = 0;
  /// Set only when the alternative beats the current route by more than the margin.
  std::optional<std::vector<std::string>> newRoute;
};

/** \brief Pure reroute rule.
 *  \param remaining  current edge first, destination last
 *
 *  Triggered when an edge after the current one is congested according to fresh data.
 */
RerouteDecision
decideReroute(const mobility::RoadGraph& graph, const TrafficView& view,
              const std::vector<std::string>& remaining, Time now, const TmsConfig& config);

} // namespace vndn::apps

#endif // VNDN_APPS_TMS_HPP
