#ifndef VNDN_FW_FORWARDER_HPP
#define VNDN_FW_FORWARDER_HPP

#include "vndn/common.hpp"
#include "vndn/fw/packet-trace.hpp"
#include "vndn/ndn/packet.hpp"
#include "vndn/sim/scheduler.hpp"
#include "vndn/table/content-store.hpp"
#include "vndn/table/face.hpp"
#include "vndn/table/fib.hpp"
#include "vndn/table/pit.hpp"

#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace vndn::fw {

enum class Strategy : uint8_t {
  /// Forward to every FIB next hop except the ingress face; NoRoute Nack when there is none.
  Multicast,
  /// Always rebroadcast non-localhop Interests on the ad-hoc face after a random delay;
  /// never Nack, and absorb Nacks from others.
  MulticastVanet,
};

std::string_view
toString(Strategy strategy);

/// Accepts "multicast" and "multicast-vanet" (or "multicast_vanet").
Strategy
parseStrategy(std::string_view text);

/// Wireless counters count frames on the ad-hoc face only; app-face traffic is local.
struct Counters
{
  uint64_t interestsSent = 0;
  uint64_t dataSent = 0;
  uint64_t nacksSent = 0;
  uint64_t interestsReceived = 0;
  uint64_t dataReceived = 0;
  uint64_t nacksReceived = 0;
  uint64_t csHits = 0;
  uint64_t dropsUnsolicited = 0;
  uint64_t dropsScope = 0;
  uint64_t dropsDuplicate = 0;

  uint64_t
  totalSent() const noexcept
  {
    return interestsSent + dataSent + nacksSent;
  }

  Counters&
  operator+=(const Counters& other);

  friend bool
  operator==(const Counters&, const Counters&) = default;
};

/// Receives Interests that the forwarder hands to an application face.
class AppHandler
{
public:
  virtual
  ~AppHandler() = default;

  virtual void
  onInterest(const ndn::Interest& interest) = 0;
};

enum class AppOutcome : uint8_t {
  Data,
  Nack,
  Timeout,
};

std::string_view
toString(AppOutcome outcome);

/// Exactly one of these is invoked per expressed Interest, whichever event comes first.
struct ConsumerCallbacks
{
  std::function<void(const ndn::Data&)> onData;
  std::function<void(const ndn::Nack&)> onNack;
  std::function<void()> onTimeout;
};

/// Where the forwarder puts frames for the ad-hoc face.
class WirelessLink
{
public:
  virtual
  ~WirelessLink() = default;

  virtual void
  transmit(const ndn::Packet& packet) = 0;
};

struct ForwarderConfig
{
  Strategy strategy = Strategy::Multicast;
  size_t csCapacity = 1000;
  /// Upper bound of the uniform rebroadcast delay used by multicast-vanet.
  Duration maxJitter = std::chrono::milliseconds(10);
};

/// A localhop Interest that arrived over the air may only go to local application faces.
bool
violatesScope(const ndn::Interest& interest, const table::Face& inFace, const table::Face& outFace);

/** \brief Per-node NDN forwarding pipeline.
 *
 *  Incoming Interest: scope check, content store, PIT insert/aggregate, then strategy.
 *  Incoming Data: PIT match, cache, then send to every downstream face except the ingress.
 *  Packets for application faces are handed over in a zero-delay event; application calls
 *  into the forwarder (expressInterest, putData) run the pipeline synchronously.
 */
class Forwarder
{
public:
  class DuplicatePrefix : public std::logic_error
  {
  public:
    using std::logic_error::logic_error;
  };

  using PendingId = uint64_t;

  Forwarder(NodeId nodeId, sim::Scheduler& scheduler, WirelessLink& link, ForwarderConfig config,
            uint64_t seed, PacketTrace* trace = nullptr);

  Forwarder(const Forwarder&) = delete;
  Forwarder& operator=(const Forwarder&) = delete;

  NodeId
  nodeId() const noexcept
  {
    return m_nodeId;
  }

  Strategy
  strategy() const noexcept
  {
    return m_config.strategy;
  }

  const table::Face&
  wirelessFace() const noexcept
  {
    return m_faces.front();
  }

  const table::Face&
  face(FaceId id) const;

  FaceId
  addAppFace(AppHandler& handler);

  /// Adds a FIB route \p prefix -> \p appFace and remembers the registration.
  /// \throw DuplicatePrefix if \p prefix is already registered on this node
  void
  registerPrefix(FaceId appFace, const ndn::Name& prefix);

  /// Plain FIB route, e.g. a default route towards the ad-hoc face.
  void
  addRoute(const ndn::Name& prefix, FaceId face);

  uint32_t
  generateNonce();

  /// Sends \p interest from \p appFace into the pipeline.
  /// \param silentTimeout  when set, expiry ends the pending Interest without calling onTimeout
  PendingId
  expressInterest(FaceId appFace, const ndn::Interest& interest, ConsumerCallbacks callbacks,
                  bool silentTimeout = false);

  /// A producer's reply entering the pipeline from \p appFace.
  void
  putData(FaceId appFace, const ndn::Data& data);

  /// A packet decoded from the ad-hoc face.
  void
  receiveFromAir(ndn::Packet packet);

  /// Wipes tables, application faces, pending Interests and routes; cancels everything this
  /// forwarder scheduled. Counters are kept.
  void
  reset();

  /// Replaces the rebroadcast delay source (default: uniform in [0, maxJitter]).
  void
  setJitterSource(std::function<Duration()> source)
  {
    m_jitter = std::move(source);
  }

  size_t
  pendingAppInterests() const noexcept
  {
    return m_pending.size();
  }

  const Counters&
  counters() const noexcept
  {
    return m_counters;
  }

  table::ContentStore&
  cs() noexcept
  {
    return m_cs;
  }

  const table::ContentStore&
  cs() const noexcept
  {
    return m_cs;
  }

  table::Pit&
  pit() noexcept
  {
    return m_pit;
  }

  const table::Pit&
  pit() const noexcept
  {
    return m_pit;
  }

  table::Fib&
  fib() noexcept
  {
    return m_fib;
  }

  const table::Fib&
  fib() const noexcept
  {
    return m_fib;
  }

  /// Per-app outcome totals, for the exactly-one-outcome invariant.
  uint64_t
  outcomesDelivered() const noexcept
  {
    return m_outcomes;
  }

  uint64_t
  interestsExpressed() const noexcept
  {
    return m_expressed;
  }

private:
  struct PendingInterest
  {
    FaceId face;
    ndn::Interest interest;
    ConsumerCallbacks callbacks;
    bool silentTimeout;
  };

  Time
  now() const noexcept
  {
    return m_scheduler.now();
  }

  void
  onIncomingInterest(const table::Face& inFace, const ndn::Interest& interest);

  void
  onIncomingData(const table::Face& inFace, const ndn::Data& data);

  void
  onIncomingNack(const table::Face& inFace, const ndn::Nack& nack);

  std::string_view
  dispatchMulticast(table::PitEntry& entry, const ndn::Interest& interest, const table::Face& inFace);

  std::string_view
  dispatchMulticastVanet(table::PitEntry& entry, const ndn::Interest& interest,
                         const table::Face& inFace);

  void
  sendInterest(table::PitEntry& entry, const table::Face& outFace, const ndn::Interest& interest);

  void
  sendPacket(const table::Face& outFace, const ndn::Packet& packet);

  void
  deliverToApp(const table::Face& appFace, const ndn::Packet& packet);

  void
  completePending(PendingId id, AppOutcome outcome, const ndn::Packet* packet);

  void
  schedule(Duration delay, std::function<void()> action);

  size_t
  traceRx(const table::Face& face, const ndn::Packet& packet);

  void
  trace(const table::Face& face, TraceDirection dir, const ndn::Packet& packet,
        std::string_view verdict);

  void
  traceOutcome(const table::Face& face, const ndn::Interest& interest, AppOutcome outcome);

private:
  NodeId m_nodeId;
  sim::Scheduler& m_scheduler;
  WirelessLink& m_link;
  ForwarderConfig m_config;
  PacketTrace* m_trace;
  std::mt19937_64 m_rng;
  std::function<Duration()> m_jitter;

  std::vector<table::Face> m_faces;
  std::map<FaceId, AppHandler*> m_appHandlers;
  std::set<ndn::Name> m_registered;
  table::ContentStore m_cs;
  table::Pit m_pit;
  table::Fib m_fib;
  Counters m_counters;

  std::map<PendingId, PendingInterest> m_pending;
  PendingId m_nextPending = 0;
  uint64_t m_epoch = 0;
  uint64_t m_outcomes = 0;
  uint64_t m_expressed = 0;
};

} // namespace vndn::fw

#endif // VNDN_FW_FORWARDER_HPP
