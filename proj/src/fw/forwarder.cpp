#include "vndn/fw/forwarder.hpp"

#include "vndn/ndn/naming.hpp"

#include <algorithm>

namespace vndn::fw {

using table::Face;
using table::FaceKind;

std::string_view
toString(Strategy strategy)
{
  return strategy == Strategy::Multicast ? "multicast" : "multicast-vanet";
}

Strategy
parseStrategy(std::string_view text)
{
  if (text == "multicast")
    return Strategy::Multicast;
  if (text == "multicast-vanet" || text == "multicast_vanet")
    return Strategy::MulticastVanet;
  throw std::invalid_argument("unknown forwarding strategy '" + std::string(text) + "'");
}

std::string_view
toString(AppOutcome outcome)
{
  switch (outcome) {
  case AppOutcome::Data:
    return "data";
  case AppOutcome::Nack:
    return "nack";
  case AppOutcome::Timeout:
    return "timeout";
  }
  return "?";
}

Counters&
Counters::operator+=(const Counters& o)
{
  interestsSent += o.interestsSent;
  dataSent += o.dataSent;
  nacksSent += o.nacksSent;
  interestsReceived += o.interestsReceived;
  dataReceived += o.dataReceived;
  nacksReceived += o.nacksReceived;
  csHits += o.csHits;
  dropsUnsolicited += o.dropsUnsolicited;
  dropsScope += o.dropsScope;
  dropsDuplicate += o.dropsDuplicate;
  return *this;
}

bool
violatesScope(const ndn::Interest& interest, const Face& inFace, const Face& outFace)
{
  return ndn::isLocalhop(interest.name) && inFace.kind == FaceKind::WirelessAdhoc &&
         outFace.kind == FaceKind::WirelessAdhoc;
}

Forwarder::Forwarder(NodeId nodeId, sim::Scheduler& scheduler, WirelessLink& link,
                     ForwarderConfig config, uint64_t seed, PacketTrace* trace)
  : m_nodeId(nodeId)
  , m_scheduler(scheduler)
  , m_link(link)
  , m_config(config)
  , m_trace(trace)
  , m_rng(seed)
  , m_cs(config.csCapacity)
{
  m_faces.push_back({0, FaceKind::WirelessAdhoc, nodeId});
  m_jitter = [this] {
    std::uniform_real_distribution<double> dist(0.0, toMilliseconds(m_config.maxJitter));
    return fromMilliseconds(dist(m_rng));
  };
}

const Face&
Forwarder::face(FaceId id) const
{
  return m_faces.at(id);
}

FaceId
Forwarder::addAppFace(AppHandler& handler)
{
  FaceId id = static_cast<FaceId>(m_faces.size());
  m_faces.push_back({id, FaceKind::App, m_nodeId});
  m_appHandlers[id] = &handler;
  return id;
}

void
Forwarder::registerPrefix(FaceId appFace, const ndn::Name& prefix)
{
  if (face(appFace).kind != FaceKind::App) {
    throw std::invalid_argument("prefixes can only be registered by application faces");
  }
  if (!m_registered.insert(prefix).second) {
    throw DuplicatePrefix(prefix.toUri() + " is already registered on node " + std::to_string(m_nodeId));
  }
  m_fib.addNextHop(prefix, appFace);
}

void
Forwarder::addRoute(const ndn::Name& prefix, FaceId faceId)
{
  face(faceId);
  m_fib.addNextHop(prefix, faceId);
}

uint32_t
Forwarder::generateNonce()
{
  return static_cast<uint32_t>(m_rng());
}

void
Forwarder::reset()
{
  ++m_epoch;
  m_faces.resize(1);
  m_appHandlers.clear();
  m_registered.clear();
  m_cs.clear();
  m_pit.clear();
  m_fib.clear();
  m_pending.clear();
}

void
Forwarder::schedule(Duration delay, std::function<void()> action)
{
  m_scheduler.schedule(delay, [this, epoch = m_epoch, action = std::move(action)] {
    if (epoch == m_epoch)
      action();
  });
}

// ---- tracing ----

void
Forwarder::trace(const Face& face, TraceDirection dir, const ndn::Packet& packet,
                 std::string_view verdict)
{
  if (m_trace == nullptr)
    return;
  TraceRecord r;
  r.time = now();
  r.node = m_nodeId;
  r.faceKind = face.kind;
  r.dir = dir;
  r.packetType = ndn::toString(ndn::getType(packet));
  r.name = ndn::getName(packet).toUri();
  if (const auto* i = std::get_if<ndn::Interest>(&packet))
    r.nonce = i->nonce;
  else if (const auto* n = std::get_if<ndn::Nack>(&packet))
    r.nonce = n->interest.nonce;
  r.verdict = verdict;
  m_trace->add(std::move(r));
}

size_t
Forwarder::traceRx(const Face& face, const ndn::Packet& packet)
{
  if (m_trace == nullptr)
    return 0;
  trace(face, TraceDirection::Rx, packet, "");
  return m_trace->size() - 1;
}

void
Forwarder::traceOutcome(const Face& face, const ndn::Interest& interest, AppOutcome outcome)
{
  if (m_trace == nullptr)
    return;
  TraceRecord r;
  r.time = now();
  r.node = m_nodeId;
  r.faceKind = face.kind;
  r.dir = TraceDirection::Event;
  r.packetType = "interest";
  r.name = interest.name.toUri();
  r.nonce = interest.nonce;
  r.verdict = toString(outcome);
  m_trace->add(std::move(r));
}

// ---- application side ----

Forwarder::PendingId
Forwarder::expressInterest(FaceId appFace, const ndn::Interest& interest, ConsumerCallbacks callbacks,
                           bool silentTimeout)
{
  const Face& inFace = face(appFace);
  if (inFace.kind != FaceKind::App) {
    throw std::invalid_argument("interests can only be expressed on application faces");
  }

  PendingId id = m_nextPending++;
  m_pending.emplace(id, PendingInterest{appFace, interest, std::move(callbacks), silentTimeout});
  ++m_expressed;
  schedule(Duration(interest.lifetime), [this, id] { completePending(id, AppOutcome::Timeout, nullptr); });

  onIncomingInterest(inFace, interest);
  return id;
}

void
Forwarder::putData(FaceId appFace, const ndn::Data& data)
{
  const Face& inFace = face(appFace);
  if (inFace.kind != FaceKind::App) {
    throw std::invalid_argument("data can only be put on application faces");
  }
  onIncomingData(inFace, data);
}

void
Forwarder::completePending(PendingId id, AppOutcome outcome, const ndn::Packet* packet)
{
  auto it = m_pending.find(id);
  if (it == m_pending.end())
    return;
  PendingInterest pending = std::move(it->second);
  m_pending.erase(it);
  ++m_outcomes;

  if (outcome == AppOutcome::Timeout && pending.silentTimeout)
    return;

  traceOutcome(face(pending.face), pending.interest, outcome);
  switch (outcome) {
  case AppOutcome::Data:
    if (pending.callbacks.onData)
      pending.callbacks.onData(std::get<ndn::Data>(*packet));
    break;
  case AppOutcome::Nack:
    if (pending.callbacks.onNack)
      pending.callbacks.onNack(std::get<ndn::Nack>(*packet));
    break;
  case AppOutcome::Timeout:
    if (pending.callbacks.onTimeout)
      pending.callbacks.onTimeout();
    break;
  }
}

void
Forwarder::deliverToApp(const Face& appFace, const ndn::Packet& packet)
{
  FaceId faceId = appFace.id;
  schedule(Duration::zero(), [this, faceId, packet] {
    if (const auto* interest = std::get_if<ndn::Interest>(&packet)) {
      if (auto it = m_appHandlers.find(faceId); it != m_appHandlers.end())
        it->second->onInterest(*interest);
      return;
    }

    std::vector<PendingId> hits;
    if (const auto* data = std::get_if<ndn::Data>(&packet)) {
      for (const auto& [id, p] : m_pending) {
        if (p.face == faceId &&
            (p.interest.name == data->name || (p.interest.canBePrefix && p.interest.name.isPrefixOf(data->name))))
          hits.push_back(id);
      }
      for (auto id : hits)
        completePending(id, AppOutcome::Data, &packet);
    }
    else {
      const auto& nack = std::get<ndn::Nack>(packet);
      for (const auto& [id, p] : m_pending) {
        if (p.face == faceId && p.interest.name == nack.interest.name &&
            p.interest.nonce == nack.interest.nonce)
          hits.push_back(id);
      }
      for (auto id : hits)
        completePending(id, AppOutcome::Nack, &packet);
    }
  });
}

// ---- wireless side ----

void
Forwarder::receiveFromAir(ndn::Packet packet)
{
  const Face& inFace = wirelessFace();
  if (auto* interest = std::get_if<ndn::Interest>(&packet)) {
    ++m_counters.interestsReceived;
    ++interest->hopCount;
    onIncomingInterest(inFace, *interest);
  }
  else if (const auto* data = std::get_if<ndn::Data>(&packet)) {
    ++m_counters.dataReceived;
    onIncomingData(inFace, *data);
  }
  else {
    ++m_counters.nacksReceived;
    onIncomingNack(inFace, std::get<ndn::Nack>(packet));
  }
}

void
Forwarder::sendPacket(const Face& outFace, const ndn::Packet& packet)
{
  trace(outFace, TraceDirection::Tx, packet, "sent");
  if (outFace.kind == FaceKind::App) {
    deliverToApp(outFace, packet);
    return;
  }
  switch (ndn::getType(packet)) {
  case ndn::PacketType::Interest:
    ++m_counters.interestsSent;
    break;
  case ndn::PacketType::Data:
    ++m_counters.dataSent;
    break;
  case ndn::PacketType::Nack:
    ++m_counters.nacksSent;
    break;
  }
  m_link.transmit(packet);
}

void
Forwarder::sendInterest(table::PitEntry& entry, const Face& outFace, const ndn::Interest& interest)
{
  entry.recordOut(outFace.id, interest.nonce, now());
  sendPacket(outFace, interest);
}

// ---- pipelines ----

void
Forwarder::onIncomingInterest(const Face& inFace, const ndn::Interest& interest)
{
  size_t rx = traceRx(inFace, interest);
  auto verdict = [&] (std::string_view v) {
    if (m_trace)
      m_trace->setVerdict(rx, v);
  };
  m_pit.expire(now());

  // (1) scope: a localhop Interest heard over the air may only reach local applications
  if (ndn::isLocalhop(interest.name) && inFace.kind == FaceKind::WirelessAdhoc) {
    const auto* fibEntry = m_fib.findLongestPrefixMatch(interest.name);
    bool anyLocal = fibEntry != nullptr &&
                    std::any_of(fibEntry->nextHops.begin(), fibEntry->nextHops.end(),
                                [&] (FaceId f) { return !violatesScope(interest, inFace, face(f)); });
    if (!anyLocal) {
      ++m_counters.dropsScope;
      return verdict("drop_scope");
    }
  }

  // (2) content store
  if (auto hit = m_cs.find(interest, now())) {
    ++m_counters.csHits;
    verdict("cs_hit");
    sendPacket(inFace, *hit);
    return;
  }

  // (3) PIT
  auto [result, entry] = m_pit.insertOrAggregate(interest, inFace.id, now());
  switch (result) {
  case table::PitInsertResult::DuplicateNonce:
    ++m_counters.dropsDuplicate;
    return verdict("drop_duplicate");
  case table::PitInsertResult::Aggregated:
    return verdict("aggregated");
  case table::PitInsertResult::NewEntry:
    break;
  }

  if (m_config.strategy == Strategy::Multicast) {
    verdict(dispatchMulticast(*entry, interest, inFace));
  }
  else {
    verdict(dispatchMulticastVanet(*entry, interest, inFace));
  }
}

std::string_view
Forwarder::dispatchMulticast(table::PitEntry& entry, const ndn::Interest& interest, const Face& inFace)
{
  std::vector<FaceId> out;
  if (const auto* fibEntry = m_fib.findLongestPrefixMatch(interest.name)) {
    for (FaceId f : fibEntry->nextHops) {
      if (f != inFace.id && !violatesScope(interest, inFace, face(f)))
        out.push_back(f);
    }
  }

  if (out.empty()) {
    m_pit.erase(entry.name);
    sendPacket(inFace, ndn::Nack{ndn::NackReason::NoRoute, interest});
    return "nack_noroute";
  }
  for (FaceId f : out) {
    sendInterest(entry, face(f), interest);
  }
  return "forwarded";
}

std::string_view
Forwarder::dispatchMulticastVanet(table::PitEntry& entry, const ndn::Interest& interest,
                                  const Face& inFace)
{
  bool localhop = ndn::isLocalhop(interest.name);
  bool broadcast = !localhop;

  std::vector<FaceId> local;
  if (const auto* fibEntry = m_fib.findLongestPrefixMatch(interest.name)) {
    for (FaceId f : fibEntry->nextHops) {
      const Face& out = face(f);
      if (out.kind == FaceKind::WirelessAdhoc) {
        // localhop goes out on the air only as its first hop; others always do (below)
        if (localhop && f != inFace.id && !violatesScope(interest, inFace, out))
          local.push_back(f);
      }
      else if (f != inFace.id) {
        local.push_back(f);
      }
    }
  }

  if (local.empty() && !broadcast) {
    return "no_nexthop";
  }

  for (FaceId f : local) {
    sendInterest(entry, face(f), interest);
  }

  if (broadcast) {
    ndn::Name name = entry.name;
    schedule(m_jitter(), [this, name, interest] {
      auto* pending = m_pit.find(name);
      // satisfied, expired or replaced while waiting: nothing left to forward
      if (pending == nullptr || pending->expiry <= now() ||
          std::none_of(pending->inRecords.begin(), pending->inRecords.end(),
                       [&] (const auto& r) { return r.nonce == interest.nonce; }))
        return;
      sendInterest(*pending, wirelessFace(), interest);
    });
  }
  return "forwarded";
}

void
Forwarder::onIncomingData(const Face& inFace, const ndn::Data& data)
{
  size_t rx = traceRx(inFace, data);
  m_pit.expire(now());

  auto matched = m_pit.matchData(data);
  if (matched.empty()) {
    ++m_counters.dropsUnsolicited;
    if (m_trace)
      m_trace->setVerdict(rx, "drop_unsolicited");
    return;
  }
  if (m_trace)
    m_trace->setVerdict(rx, "satisfied");

  m_cs.insert(data, now());

  std::vector<FaceId> downstream;
  for (const auto& entry : matched) {
    for (const auto& rec : entry.inRecords) {
      if (rec.face != inFace.id && std::find(downstream.begin(), downstream.end(), rec.face) == downstream.end())
        downstream.push_back(rec.face);
    }
  }
  for (FaceId f : downstream) {
    sendPacket(face(f), data);
  }
}

void
Forwarder::onIncomingNack(const Face& inFace, const ndn::Nack& nack)
{
  size_t rx = traceRx(inFace, nack);
  auto verdict = [&] (std::string_view v) {
    if (m_trace)
      m_trace->setVerdict(rx, v);
  };
  m_pit.expire(now());

  if (m_config.strategy == Strategy::MulticastVanet) {
    return verdict("absorbed");
  }

  auto* entry = m_pit.find(nack.interest.name);
  if (entry == nullptr || !entry->hasOutNonce(nack.interest.nonce)) {
    return verdict("ignored");
  }

  table::PitEntry consumed = std::move(*entry);
  m_pit.erase(consumed.name);
  verdict("consumed");
  for (const auto& rec : consumed.inRecords) {
    if (rec.face == inFace.id)
      continue;
    ndn::Interest downstream = nack.interest;
    downstream.nonce = rec.nonce;
    sendPacket(face(rec.face), ndn::Nack{nack.reason, downstream});
  }
}

} // namespace vndn::fw
