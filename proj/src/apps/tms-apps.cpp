#include "vndn/apps/tms-apps.hpp"

namespace vndn::apps {

std::set<std::string>
edgesWithinRange(const mobility::RoadGraph& graph, sim::Position rsu, double range)
{
  std::set<std::string> out;
  for (const auto& [id, edge] : graph.edges()) {
    if (graph.distanceToEdge(id, rsu) <= range)
      out.insert(id);
  }
  return out;
}

TmsProducer::TmsProducer(sim::Node& node, const mobility::Mobility& mobility,
                         std::set<std::string> monitored, TmsConfig config, AppMetrics* metrics)
  : m_node(node)
  , m_mobility(mobility)
  , m_monitored(std::move(monitored))
  , m_config(config)
  , m_metrics(metrics)
{
}

void
TmsProducer::start()
{
  auto& fw = m_node.forwarder();
  m_face = fw.addAppFace(*this);
  fw.registerPrefix(m_face, ndn::trafficPrefix());
}

void
TmsProducer::onInterest(const ndn::Interest& interest)
{
  ndn::TrafficQuery query;
  try {
    query = ndn::parseTrafficName(interest.name);
  }
  catch (const ndn::NamingError&) {
    return;
  }

  uint64_t current = mobility::windowIndex(m_node.now(), m_config.window);
  if (m_monitored.count(query.roadId) == 0 || query.window > current) {
    if (m_metrics)
      ++m_metrics->producerSilent;
    return;
  }

  auto stats = m_mobility.edgeStats(query.roadId, query.window);
  ndn::Data data{interest.name, encodeTrafficPayload(stats),
                 std::chrono::duration_cast<std::chrono::milliseconds>(m_config.window)};
  m_node.forwarder().putData(m_face, data);
  ++m_replies;
  if (m_metrics)
    ++m_metrics->producerReplies;
}

TmsConsumer::TmsConsumer(sim::Node& node, mobility::Mobility& mobility, std::string vehicleId,
                         TmsConfig config, uint64_t seed, AppMetrics* metrics)
  : m_node(node)
  , m_mobility(mobility)
  , m_vehicleId(std::move(vehicleId))
  , m_config(config)
  , m_rng(seed)
  , m_metrics(metrics)
  , m_view(config.stalenessHorizon())
{
  m_config.validate();
}

void
TmsConsumer::start()
{
  m_face = m_node.forwarder().addAppFace(*this);
  std::uniform_int_distribution<Duration::rep> jitter(0, m_config.queryInterval.count() - 1);
  m_node.schedule(Duration(jitter(m_rng)), [this] {
    tick();
  });
}

void
TmsConsumer::tick()
{
  m_node.schedule(m_config.queryInterval, [this] { tick(); });

  const mobility::Vehicle* self = m_mobility.findVehicle(m_vehicleId);
  if (self == nullptr)
    return;
  Time now = m_node.now();
  for (size_t i = self->routeIndex + 1; i < self->route.size(); ++i) {
    if (m_view.fresh(self->route[i], now) == nullptr)
      query(self->route[i]);
  }
  maybeReroute();
}

void
TmsConsumer::query(const std::string& edgeId)
{
  auto& fw = m_node.forwarder();
  uint64_t window = mobility::windowIndex(m_node.now(), m_config.window);
  ndn::Interest interest;
  interest.name = ndn::makeTrafficName(edgeId, window);
  interest.nonce = fw.generateNonce();
  interest.lifetime = std::chrono::duration_cast<std::chrono::milliseconds>(m_config.interestLifetime);

  fw::ConsumerCallbacks callbacks;
  callbacks.onData = [this] (const ndn::Data& data) { onData(data); };
  callbacks.onNack = [this] (const ndn::Nack&) {
    ++m_nacks;
    if (m_metrics)
      ++m_metrics->trafficNacks;
  };
  callbacks.onTimeout = [this] {
    ++m_timeouts;
    if (m_metrics)
      ++m_metrics->trafficTimeouts;
  };
  fw.expressInterest(m_face, interest, std::move(callbacks));
  ++m_sent;
  if (m_metrics)
    ++m_metrics->trafficInterests;
}

void
TmsConsumer::onData(const ndn::Data& data)
{
  ++m_data;
  if (m_metrics)
    ++m_metrics->trafficData;
  try {
    m_view.update(decodeTrafficPayload(data.payload), m_node.now());
  }
  catch (const MalformedPayload&) {
    if (m_metrics)
      ++m_metrics->malformedPayloads;
    return;
  }
  maybeReroute();
}

void
TmsConsumer::maybeReroute()
{
  if (!m_config.rerouting)
    return;
  const mobility::Vehicle* self = m_mobility.findVehicle(m_vehicleId);
  if (self == nullptr)
    return;

  std::vector<std::string> remaining(self->route.begin() + static_cast<std::ptrdiff_t>(self->routeIndex),
                                     self->route.end());
  RerouteDecision decision;
  try {
    decision = decideReroute(m_mobility.graph(), m_view, remaining, m_node.now(), m_config);
  }
  catch (const mobility::Unreachable&) {
    return;
  }
  if (!decision.newRoute)
    return;
  m_mobility.setRoute(m_vehicleId, *decision.newRoute);
  if (m_metrics)
    ++m_metrics->reroutes;
}

} // namespace vndn::apps
