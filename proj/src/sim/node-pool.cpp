#include "vndn/sim/node-pool.hpp"

#include "vndn/sim/random.hpp"

namespace vndn::sim {

Node::Node(NodeId id, Scheduler& scheduler, Medium& medium, fw::ForwarderConfig config, uint64_t seed,
           fw::PacketTrace* trace)
  : m_id(id)
  , m_scheduler(scheduler)
  , m_medium(medium)
  , m_forwarder(id, scheduler, *this, config, seed, trace)
{
  m_medium.attach(id, *this);
}

void
Node::schedule(Duration delay, std::function<void()> action)
{
  m_scheduler.schedule(delay, [this, epoch = m_epoch, action = std::move(action)] {
    if (m_active && epoch == m_epoch)
      action();
  });
}

void
Node::receiveFrame(const Frame& frame)
{
  if (!m_active)
    return;
  ndn::Packet packet;
  try {
    packet = ndn::decodePacket(*frame.bytes);
  }
  catch (const ndn::DecodeError&) {
    ++m_malformed;
    return;
  }
  m_forwarder.receiveFromAir(std::move(packet));
}

void
Node::transmit(const ndn::Packet& packet)
{
  if (!m_active)
    return;
  m_medium.broadcast(m_id, ndn::encodePacket(packet));
}

void
Node::activate(const std::string& boundId, Position position)
{
  ++m_epoch;
  m_forwarder.reset();
  m_boundId = boundId;
  m_position = position;
  m_active = true;
}

void
Node::deactivate()
{
  for (auto& app : m_apps)
    app->stop();
  m_apps.clear();
  m_forwarder.reset();
  ++m_epoch;
  m_active = false;
  m_boundId.clear();
  m_position = PARKED;
}

NodePool::NodePool(Scheduler& scheduler, Medium& medium, size_t capacity, fw::ForwarderConfig config,
                   uint64_t seed, fw::PacketTrace* trace)
{
  m_nodes.reserve(capacity);
  for (NodeId id = 0; id < capacity; ++id) {
    m_nodes.push_back(std::make_unique<Node>(id, scheduler, medium, config,
                                             streamSeed(seed, Stream::NodeBase, id), trace));
    m_free.push(id);
  }
}

NodeId
NodePool::activate(const std::string& vehicleId, Position position, const AppInstaller& install)
{
  if (m_bound.count(vehicleId) > 0) {
    throw std::invalid_argument("vehicle '" + vehicleId + "' is already active");
  }
  if (m_free.empty()) {
    throw PoolExhausted("node pool of " + std::to_string(capacity()) +
                        " nodes exhausted while activating '" + vehicleId + "'");
  }
  NodeId id = m_free.top();
  m_free.pop();
  m_bound.emplace(vehicleId, id);

  Node& n = *m_nodes[id];
  n.activate(vehicleId, position);
  if (install)
    install(n);
  for (auto& app : n.m_apps)
    app->start();
  return id;
}

void
NodePool::deactivate(const std::string& vehicleId)
{
  auto it = m_bound.find(vehicleId);
  if (it == m_bound.end()) {
    throw UnknownVehicle("vehicle '" + vehicleId + "' is not active");
  }
  m_nodes[it->second]->deactivate();
  m_free.push(it->second);
  m_bound.erase(it);
}

Node*
NodePool::findByVehicle(const std::string& vehicleId)
{
  auto it = m_bound.find(vehicleId);
  return it == m_bound.end() ? nullptr : m_nodes[it->second].get();
}

fw::Counters
NodePool::totalCounters() const
{
  fw::Counters total;
  for (const auto& n : m_nodes)
    total += n->forwarder().counters();
  return total;
}

} // namespace vndn::sim
