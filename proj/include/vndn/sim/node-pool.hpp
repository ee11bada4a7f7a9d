#ifndef VNDN_SIM_NODE_POOL_HPP
#define VNDN_SIM_NODE_POOL_HPP

#include "vndn/fw/forwarder.hpp"
#include "vndn/sim/medium.hpp"
#include "vndn/sim/scheduler.hpp"

#include <functional>
#include <map>
#include <memory>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace vndn::sim {

class Node;

/// Something installed on a node for the duration of one activation.
class Application : public fw::AppHandler
{
public:
  virtual void
  start()
  {
  }

  virtual void
  stop()
  {
  }

  void
  onInterest(const ndn::Interest&) override
  {
  }
};

/** \brief A pooled network node: forwarder, ad-hoc radio, and installed applications.
 *
 *  While inactive the radio is off and the node is parked far outside everyone's range.
 */
class Node : public RadioEndpoint, public fw::WirelessLink
{
public:
  Node(NodeId id, Scheduler& scheduler, Medium& medium, fw::ForwarderConfig config, uint64_t seed,
       fw::PacketTrace* trace);

  NodeId
  id() const noexcept
  {
    return m_id;
  }

  bool
  isActive() const noexcept
  {
    return m_active;
  }

  /// The vehicle (or RSU) identifier bound by the current activation.
  const std::string&
  boundId() const noexcept
  {
    return m_boundId;
  }

  fw::Forwarder&
  forwarder() noexcept
  {
    return m_forwarder;
  }

  const fw::Forwarder&
  forwarder() const noexcept
  {
    return m_forwarder;
  }

  Time
  now() const noexcept
  {
    return m_scheduler.now();
  }

  Position
  position() const noexcept
  {
    return m_position;
  }

  void
  setPosition(Position p) noexcept
  {
    m_position = p;
  }

  template<typename App, typename... Args>
  App&
  installApp(Args&&... args)
  {
    auto app = std::make_unique<App>(std::forward<Args>(args)...);
    App& ref = *app;
    m_apps.push_back(std::move(app));
    return ref;
  }

  const std::vector<std::unique_ptr<Application>>&
  apps() const noexcept
  {
    return m_apps;
  }

  /// Runs \p action after \p delay unless the node is deactivated first.
  void
  schedule(Duration delay, std::function<void()> action);

  uint64_t
  malformedFrames() const noexcept
  {
    return m_malformed;
  }

  // RadioEndpoint
  bool
  isRadioEnabled() const override
  {
    return m_active;
  }

  Position
  radioPosition() const override
  {
    return m_position;
  }

  uint64_t
  radioEpoch() const override
  {
    return m_epoch;
  }

  void
  receiveFrame(const Frame& frame) override;

  // WirelessLink
  void
  transmit(const ndn::Packet& packet) override;

  static constexpr Position PARKED{-1e6, -1e6};

private:
  friend class NodePool;

  void
  activate(const std::string& boundId, Position position);

  void
  deactivate();

private:
  NodeId m_id;
  Scheduler& m_scheduler;
  Medium& m_medium;
  fw::Forwarder m_forwarder;
  std::vector<std::unique_ptr<Application>> m_apps;
  std::string m_boundId;
  Position m_position = PARKED;
  bool m_active = false;
  uint64_t m_epoch = 0;
  uint64_t m_malformed = 0;
};

/** \brief Fixed set of pre-built nodes lent out to vehicles as they appear.
 *
 *  The lowest free node id is always handed out first, so runs are reproducible.
 */
class NodePool
{
public:
  class PoolExhausted : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  class UnknownVehicle : public std::invalid_argument
  {
  public:
    using std::invalid_argument::invalid_argument;
  };

  using AppInstaller = std::function<void(Node&)>;

  NodePool(Scheduler& scheduler, Medium& medium, size_t capacity, fw::ForwarderConfig config,
           uint64_t seed, fw::PacketTrace* trace = nullptr);

  /// Binds a free node to \p vehicleId with fresh tables, runs \p install, then starts its apps.
  NodeId
  activate(const std::string& vehicleId, Position position, const AppInstaller& install = {});

  /// Stops and removes the apps, drops pending Interests silently, parks the node.
  void
  deactivate(const std::string& vehicleId);

  Node&
  node(NodeId id)
  {
    return *m_nodes.at(id);
  }

  const Node&
  node(NodeId id) const
  {
    return *m_nodes.at(id);
  }

  Node*
  findByVehicle(const std::string& vehicleId);

  size_t
  capacity() const noexcept
  {
    return m_nodes.size();
  }

  size_t
  activeCount() const noexcept
  {
    return m_bound.size();
  }

  /// Sum over every node; counters survive deactivation.
  fw::Counters
  totalCounters() const;

  const std::vector<std::unique_ptr<Node>>&
  nodes() const noexcept
  {
    return m_nodes;
  }

private:
  std::vector<std::unique_ptr<Node>> m_nodes;
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> m_free;
  std::map<std::string, NodeId> m_bound;
};

} // namespace vndn::sim

#endif // VNDN_SIM_NODE_POOL_HPP
