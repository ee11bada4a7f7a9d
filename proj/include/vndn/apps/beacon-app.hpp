#ifndef VNDN_APPS_BEACON_APP_HPP
#define VNDN_APPS_BEACON_APP_HPP

#include "vndn/apps/app-metrics.hpp"
#include "vndn/apps/neighbor-table.hpp"
#include "vndn/mobility/mobility.hpp"
#include "vndn/sim/node-pool.hpp"

#include <random>

namespace vndn::apps {

struct BeaconConfig
{
  Duration interval = std::chrono::milliseconds(1000);
};

/** \brief Safety beaconing over /localhop/beacon.
 *
 *  Sends the vehicle's live state every interval and never expects Data. A beacon lives for
 *  half the interval. Received beacons
 *  refresh the neighbor table; a beacon from an emergency vehicle on the same road makes a
 *  passenger vehicle move one lane to the right.
 */
class BeaconApp : public sim::Application
{
public:
  BeaconApp(sim::Node& node, mobility::Mobility& mobility, std::string vehicleId, BeaconConfig config,
            uint64_t seed, AppMetrics* metrics = nullptr);

  void
  start() override;

  void
  onInterest(const ndn::Interest& interest) override;

  const NeighborTable&
  neighbors() const noexcept
  {
    return m_neighbors;
  }

  uint64_t
  sentCount() const noexcept
  {
    return m_sent;
  }

  uint64_t
  receivedCount() const noexcept
  {
    return m_received;
  }

  uint64_t
  malformedCount() const noexcept
  {
    return m_malformed;
  }

private:
  void
  tick();

private:
  sim::Node& m_node;
  mobility::Mobility& m_mobility;
  std::string m_vehicleId;
  BeaconConfig m_config;
  std::mt19937_64 m_rng;
  AppMetrics* m_metrics;
  NeighborTable m_neighbors;
  FaceId m_face = INVALID_FACE;
  uint64_t m_sent = 0;
  uint64_t m_received = 0;
  uint64_t m_malformed = 0;
};

} // namespace vndn::apps

#endif // VNDN_APPS_BEACON_APP_HPP
