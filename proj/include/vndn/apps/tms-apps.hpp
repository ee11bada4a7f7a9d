#ifndef VNDN_APPS_TMS_APPS_HPP
#define VNDN_APPS_TMS_APPS_HPP

#include "vndn/apps/app-metrics.hpp"
#include "vndn/apps/tms.hpp"
#include "vndn/mobility/mobility.hpp"
#include "vndn/sim/node-pool.hpp"

#include <random>
#include <set>

namespace vndn::apps {

/// Edges with any point within \p range of \p rsu.
std::set<std::string>
edgesWithinRange(const mobility::RoadGraph& graph, sim::Position rsu, double range);

/** \brief RSU side of the traffic service, answering /service/traffic/<road>/<window>.
 *
 *  Replies with that window's statistics so far for monitored roads; stays silent for other
 *  roads and for windows that have not started.
 */
class TmsProducer : public sim::Application
{
public:
  TmsProducer(sim::Node& node, const mobility::Mobility& mobility, std::set<std::string> monitored,
              TmsConfig config, AppMetrics* metrics = nullptr);

  void
  start() override;

  void
  onInterest(const ndn::Interest& interest) override;

  const std::set<std::string>&
  monitoredEdges() const noexcept
  {
    return m_monitored;
  }

  uint64_t
  repliesSent() const noexcept
  {
    return m_replies;
  }

private:
  sim::Node& m_node;
  const mobility::Mobility& m_mobility;
  std::set<std::string> m_monitored;
  TmsConfig m_config;
  AppMetrics* m_metrics;
  FaceId m_face = INVALID_FACE;
  uint64_t m_replies = 0;
};

/** \brief Vehicle side of the traffic service.
 *
 *  Every query interval asks for the current window of each road ahead that has no fresh
 *  entry in the view, then applies the reroute rule.
 */
class TmsConsumer : public sim::Application
{
public:
  TmsConsumer(sim::Node& node, mobility::Mobility& mobility, std::string vehicleId, TmsConfig config,
              uint64_t seed, AppMetrics* metrics = nullptr);

  void
  start() override;

  const TrafficView&
  view() const noexcept
  {
    return m_view;
  }

  uint64_t
  interestsSent() const noexcept
  {
    return m_sent;
  }

  uint64_t
  dataReceived() const noexcept
  {
    return m_data;
  }

  uint64_t
  nacksReceived() const noexcept
  {
    return m_nacks;
  }

  uint64_t
  timeouts() const noexcept
  {
    return m_timeouts;
  }

  /// Runs one query round now; also used by the periodic timer.
  void
  tick();

  /// Asks for one road's current window.
  void
  query(const std::string& edgeId);

private:
  void
  onData(const ndn::Data& data);

  void
  maybeReroute();

private:
  sim::Node& m_node;
  mobility::Mobility& m_mobility;
  std::string m_vehicleId;
  TmsConfig m_config;
  std::mt19937_64 m_rng;
  AppMetrics* m_metrics;
  TrafficView m_view;
  FaceId m_face = INVALID_FACE;
  uint64_t m_sent = 0;
  uint64_t m_data = 0;
  uint64_t m_nacks = 0;
  uint64_t m_timeouts = 0;
};

} // namespace vndn::apps

#endif // VNDN_APPS_TMS_APPS_HPP
