#include "vndn/apps/beacon-app.hpp"

#include <algorithm>

namespace vndn::apps {

BeaconApp::BeaconApp(sim::Node& node, mobility::Mobility& mobility, std::string vehicleId,
                     BeaconConfig config, uint64_t seed, AppMetrics* metrics)
  : m_node(node)
  , m_mobility(mobility)
  , m_vehicleId(std::move(vehicleId))
  , m_config(config)
  , m_rng(seed)
  , m_metrics(metrics)
  , m_neighbors(3 * config.interval)
{
  if (m_config.interval <= Duration::zero())
    throw std::invalid_argument("beacon interval must be positive");
}

void
BeaconApp::start()
{
  auto& fw = m_node.forwarder();
  m_face = fw.addAppFace(*this);
  fw.registerPrefix(m_face, ndn::beaconPrefix());

  std::uniform_int_distribution<Duration::rep> jitter(0, m_config.interval.count() - 1);
  m_node.schedule(Duration(jitter(m_rng)), [this] { tick(); });
}

void
BeaconApp::tick()
{
  m_node.schedule(m_config.interval, [this] { tick(); });

  const mobility::Vehicle* self = m_mobility.findVehicle(m_vehicleId);
  if (self == nullptr)
    return;
  m_neighbors.purge(m_node.now());

  ndn::BeaconInfo info;
  info.nodeId = std::to_string(m_node.id());
  info.kind = self->kind;
  info.roadId = self->currentEdge();
  info.x = self->position.x;
  info.y = self->position.y;
  info.speed = self->speed;

  auto& fw = m_node.forwarder();
  ndn::Interest beacon;
  beacon.name = ndn::makeBeaconName(info);
  beacon.nonce = fw.generateNonce();
  // gone from every PIT before the next beacon, else a stationary vehicle's identical name aggregates
  beacon.lifetime = std::max(std::chrono::duration_cast<std::chrono::milliseconds>(m_config.interval / 2),
                             std::chrono::milliseconds(1));
  fw.expressInterest(m_face, beacon, {}, true);
  ++m_sent;
  if (m_metrics)
    ++m_metrics->beaconsSent;
}

void
BeaconApp::onInterest(const ndn::Interest& interest)
{
  ndn::BeaconInfo info;
  try {
    info = ndn::parseBeaconName(interest.name);
  }
  catch (const ndn::NamingError&) {
    ++m_malformed;
    if (m_metrics)
      ++m_metrics->malformedBeacons;
    return;
  }
  ++m_received;
  if (m_metrics)
    ++m_metrics->beaconsReceived;

  Time now = m_node.now();
  m_neighbors.purge(now);
  m_neighbors.upsert(info, now);

  const mobility::Vehicle* self = m_mobility.findVehicle(m_vehicleId);
  if (self == nullptr)
    return;
  if (info.kind == ndn::VehicleKind::Emergency && self->kind == ndn::VehicleKind::Passenger &&
      info.roadId == self->currentEdge() && self->lane > 0) {
    m_mobility.setLane(m_vehicleId, self->lane - 1);
    if (m_metrics)
      ++m_metrics->laneYields;
  }
}

} // namespace vndn::apps
