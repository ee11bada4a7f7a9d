#include "vndn/sim/medium.hpp"

#include <algorithm>
#include <cmath>

namespace vndn::sim {

double
distance(const Position& a, const Position& b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

Medium::Medium(Scheduler& scheduler, MediumConfig config, uint64_t seed)
  : m_scheduler(scheduler)
  , m_config(config)
  , m_rng(seed)
{
  if (!(m_config.range > 0)) {
    throw std::invalid_argument("radio range must be positive");
  }
  if (!(m_config.dataRate > 0)) {
    throw std::invalid_argument("radio data rate must be positive");
  }
  if (m_config.lossProbability < 0 || m_config.lossProbability > 1) {
    throw std::invalid_argument("loss probability must lie in [0, 1]");
  }
}

void
Medium::attach(NodeId id, RadioEndpoint& endpoint)
{
  if (id >= m_endpoints.size()) {
    m_endpoints.resize(id + 1, nullptr);
    m_receptions.resize(id + 1);
  }
  m_endpoints[id] = &endpoint;
}

Duration
Medium::airtime(size_t bytes) const
{
  return fromSeconds(static_cast<double>(bytes) * 8.0 / m_config.dataRate) + m_config.overhead;
}

bool
Medium::inRange(NodeId a, NodeId b) const
{
  return distance(m_endpoints.at(a)->radioPosition(), m_endpoints.at(b)->radioPosition()) <=
         m_config.range;
}

std::vector<NodeId>
Medium::broadcast(NodeId sender, ndn::Buffer bytes)
{
  if (bytes.size() > m_config.mtu) {
    throw FrameTooBig("frame of " + std::to_string(bytes.size()) + " bytes exceeds MTU " +
                      std::to_string(m_config.mtu));
  }

  Frame frame{sender, std::make_shared<const ndn::Buffer>(std::move(bytes)), m_scheduler.now()};
  Duration air = airtime(frame.bytes->size());
  uint64_t frameSeq = m_framesSent++;
  Position origin = m_endpoints.at(sender)->radioPosition();

  std::vector<NodeId> receivers;
  for (NodeId id = 0; id < m_endpoints.size(); ++id) {
    RadioEndpoint* ep = m_endpoints[id];
    if (id == sender || ep == nullptr || !ep->isRadioEnabled())
      continue;
    if (distance(origin, ep->radioPosition()) > m_config.range)
      continue;

    bool lost = false;
    if (m_config.lossProbability > 0) {
      lost = std::uniform_real_distribution<double>(0.0, 1.0)(m_rng) < m_config.lossProbability;
    }
    if (m_config.collisions == CollisionModel::Slot) {
      auto& recs = m_receptions[id];
      // a reception can matter to any frame that overlapped it, and no frame outlasts the MTU airtime
      Duration horizon = airtime(m_config.mtu);
      std::erase_if(recs, [&] (const Reception& r) { return r.end + horizon < frame.start; });
      recs.push_back({frame.start, frame.start + air, frameSeq});
    }
    receivers.push_back(id);
    m_scheduler.schedule(air, [this, id, epoch = ep->radioEpoch(), frame, frameSeq, lost] {
      deliver(id, epoch, frame, frameSeq, lost);
    });
  }
  return receivers;
}

void
Medium::deliver(NodeId receiver, uint64_t epoch, const Frame& frame, uint64_t frameSeq, bool lost)
{
  auto drop = [&] (DropReason reason) {
    if (m_onDrop)
      m_onDrop(receiver, frame, reason);
  };

  RadioEndpoint* ep = m_endpoints[receiver];
  if (!ep->isRadioEnabled() || ep->radioEpoch() != epoch) {
    return drop(DropReason::Inactive);
  }
  if (lost) {
    return drop(DropReason::Lost);
  }
  if (m_config.collisions == CollisionModel::Slot) {
    const auto& recs = m_receptions[receiver];
    Time end = m_scheduler.now();
    bool overlapped = std::any_of(recs.begin(), recs.end(), [&] (const Reception& r) {
      return r.frameSeq != frameSeq && r.start < end && frame.start < r.end;
    });
    if (overlapped) {
      return drop(DropReason::Collided);
    }
  }
  ++m_framesDelivered;
  ep->receiveFrame(frame);
}

} // namespace vndn::sim
