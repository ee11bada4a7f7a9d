#include "equivalence.hpp"
#include "oracles.hpp"

#include "vndn/ndn/naming.hpp"
#include "vndn/sim/node-pool.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

namespace vndn::tests {

namespace {

class ScriptApp : public sim::Application
{
public:
  ScriptApp(sim::Node& node, bool producer)
    : m_node(node)
    , m_producer(producer)
  {
  }

  void
  start() override
  {
    m_face = m_node.forwarder().addAppFace(*this);
    m_node.forwarder().registerPrefix(m_face, ndn::beaconPrefix());
    if (m_producer)
      m_node.forwarder().registerPrefix(m_face, ndn::trafficPrefix());
  }

  void
  onInterest(const ndn::Interest& interest) override
  {
    if (m_producer && isScriptedProducerName(interest.name))
      m_node.forwarder().putData(m_face, scriptedReply(interest));
  }

  void
  express(const ndn::Interest& interest)
  {
    m_node.forwarder().expressInterest(m_face, interest, {});
  }

private:
  sim::Node& m_node;
  bool m_producer;
  FaceId m_face = INVALID_FACE;
};

} // namespace

std::vector<std::string>
runRealTrace(const EqScenario& sc)
{
  sim::Scheduler scheduler;
  sim::MediumConfig mc;
  mc.range = sc.range;
  sim::Medium medium(scheduler, mc, 1);
  fw::PacketTrace trace;
  fw::ForwarderConfig fc;
  fc.strategy = sc.strategy;
  fc.csCapacity = sc.csCapacity;
  sim::NodePool pool(scheduler, medium, sc.positions.size(), fc, 7, &trace);

  std::vector<ScriptApp*> apps;
  for (size_t i = 0; i < sc.positions.size(); ++i) {
    pool.activate("n" + std::to_string(i), sc.positions[i], [&] (sim::Node& node) {
      auto& f = node.forwarder();
      auto calls = std::make_shared<uint64_t>(0);
      f.setJitterSource([id = node.id(), calls] { return scriptedJitter(id, (*calls)++); });
      f.addRoute(ndn::Name{"service"}, 0);
      f.addRoute(ndn::beaconPrefix(), 0);
      apps.push_back(&node.installApp<ScriptApp>(node, sc.producer[i]));
    });
  }
  for (const auto& s : sc.script) {
    scheduler.scheduleAt(s.at, [app = apps.at(s.node), interest = s.interest] { app->express(interest); });
  }
  scheduler.runUntil(sc.horizon);

  std::vector<std::string> lines;
  for (const auto& r : trace.records())
    lines.push_back(fw::formatTraceLine(r));
  return lines;
}

// ---- reference model ----

namespace {

constexpr FaceId AIR = 0;
constexpr FaceId APP = 1;

size_t
nameSize(const ndn::Name& n)
{
  size_t s = 2;
  for (const auto& c : n.components())
    s += 1 + c.size();
  return s;
}

size_t
frameSize(const ndn::Packet& p)
{
  if (const auto* i = std::get_if<ndn::Interest>(&p))
    return 1 + nameSize(i->name) + 13;
  if (const auto* d = std::get_if<ndn::Data>(&p))
    return 1 + nameSize(d->name) + 4 + d->payload.size() + 4;
  return 2 + nameSize(std::get<ndn::Nack>(p).interest.name) + 13;
}

class Reference
{
public:
  explicit
  Reference(const EqScenario& sc)
    : m_sc(sc)
  {
    for (size_t i = 0; i < sc.positions.size(); ++i) {
      RNode n{sc.positions[i], sc.producer[i], {}, LruOracle(sc.csCapacity), {}, {}, 0};
      n.fib.push_back({ndn::Name{"service"}, {AIR}});
      n.fib.push_back({ndn::beaconPrefix(), {AIR, APP}});
      if (n.producer)
        n.fib.push_back({ndn::trafficPrefix(), {APP}});
      m_nodes.push_back(std::move(n));
    }
  }

  std::vector<std::string>
  run()
  {
    for (const auto& s : m_sc.script) {
      at(s.at, [this, s] { express(s.node, s.interest); });
    }
    while (true) {
      size_t best = m_events.size();
      for (size_t i = 0; i < m_events.size(); ++i) {
        const auto& e = m_events[i];
        if (best == m_events.size() || e.when < m_events[best].when ||
            (e.when == m_events[best].when && e.seq < m_events[best].seq))
          best = i;
      }
      if (best == m_events.size() || m_events[best].when > m_sc.horizon)
        break;
      auto ev = std::move(m_events[best]);
      m_events.erase(m_events.begin() + static_cast<std::ptrdiff_t>(best));
      m_now = ev.when;
      ev.fn();
    }
    return m_lines;
  }

private:
  struct InRec
  {
    FaceId face;
    uint32_t nonce;
    Time expiry;
  };
  struct OutRec
  {
    FaceId face;
    uint32_t nonce;
  };
  struct PitRec
  {
    ndn::Name name;
    bool canBePrefix;
    std::vector<InRec> in;
    std::vector<OutRec> out;
    Time expiry;
  };
  struct Route
  {
    ndn::Name prefix;
    std::vector<FaceId> hops;
  };
  struct Pending
  {
    ndn::Interest interest;
    bool done;
  };
  struct RNode
  {
    sim::Position pos;
    bool producer;
    std::vector<Route> fib;
    LruOracle cs;
    std::vector<PitRec> pit;
    std::vector<Pending> pending;
    uint64_t jitterCalls;
  };
  struct Event
  {
    Time when;
    uint64_t seq;
    std::function<void()> fn;
  };

  void
  at(Time when, std::function<void()> fn)
  {
    m_events.push_back({when, m_seq++, std::move(fn)});
  }

  void
  after(Duration d, std::function<void()> fn)
  {
    at(m_now + d, std::move(fn));
  }

  static bool
  localhop(const ndn::Name& n)
  {
    return n.size() > 0 && n[0] == "localhop";
  }

  std::string
  line(NodeId node, FaceId face, const char* dir, const ndn::Packet& p, const std::string& verdict) const
  {
    char t[48];
    std::snprintf(t, sizeof(t), "%lld.%06lld", static_cast<long long>(m_now.count() / 1000000),
                  static_cast<long long>(m_now.count() % 1000000));
    std::string type, nonce = "-";
    if (const auto* i = std::get_if<ndn::Interest>(&p)) {
      type = "interest";
      nonce = std::to_string(i->nonce);
    }
    else if (std::holds_alternative<ndn::Data>(p)) {
      type = "data";
    }
    else {
      type = "nack";
      nonce = std::to_string(std::get<ndn::Nack>(p).interest.nonce);
    }
    return std::string(t) + " " + std::to_string(node) + " " + (face == AIR ? "wireless" : "app") + " " +
           dir + " " + type + " " + ndn::getName(p).toUri() + " " + nonce + " " + verdict;
  }

  const Route*
  lpm(const RNode& n, const ndn::Name& name) const
  {
    const Route* best = nullptr;
    for (const auto& r : n.fib) {
      if (r.prefix.isPrefixOf(name) && (best == nullptr || r.prefix.size() > best->prefix.size()))
        best = &r;
    }
    return best;
  }

  PitRec*
  pitFind(RNode& n, const ndn::Name& name)
  {
    for (auto& e : n.pit) {
      if (e.name == name)
        return &e;
    }
    return nullptr;
  }

  void
  pitErase(RNode& n, const ndn::Name& name)
  {
    for (size_t i = 0; i < n.pit.size(); ++i) {
      if (n.pit[i].name == name) {
        n.pit.erase(n.pit.begin() + static_cast<std::ptrdiff_t>(i));
        return;
      }
    }
  }

  void
  expire(RNode& n)
  {
    std::vector<PitRec> kept;
    for (auto& e : n.pit) {
      if (e.expiry > m_now)
        kept.push_back(std::move(e));
    }
    n.pit = std::move(kept);
  }

  void
  send(NodeId id, FaceId face, ndn::Packet p)
  {
    m_lines.push_back(line(id, face, "tx", p, "sent"));
    if (face != AIR) {
      after(Duration::zero(), [this, id, p] { toApp(id, p); });
      return;
    }
    auto air = std::chrono::nanoseconds(std::llround(static_cast<double>(frameSize(p)) * 8.0 / 6e6 * 1e9)) +
               std::chrono::microseconds(100);
    for (NodeId j = 0; j < m_nodes.size(); ++j) {
      if (j == id)
        continue;
      double dx = m_nodes[j].pos.x - m_nodes[id].pos.x;
      double dy = m_nodes[j].pos.y - m_nodes[id].pos.y;
      if (std::sqrt(dx * dx + dy * dy) > m_sc.range)
        continue;
      after(air, [this, j, p] { fromAir(j, p); });
    }
  }

  void
  fromAir(NodeId id, ndn::Packet p)
  {
    if (auto* i = std::get_if<ndn::Interest>(&p)) {
      ++i->hopCount;
      interest(id, AIR, *i);
    }
    else if (const auto* d = std::get_if<ndn::Data>(&p)) {
      data(id, AIR, *d);
    }
    else {
      nack(id, AIR, std::get<ndn::Nack>(p));
    }
  }

  void
  express(NodeId id, const ndn::Interest& i)
  {
    auto& n = m_nodes[id];
    size_t slot = n.pending.size();
    n.pending.push_back({i, false});
    after(Duration(i.lifetime), [this, id, slot] { complete(id, slot, "timeout"); });
    interest(id, APP, i);
  }

  void
  complete(NodeId id, size_t slot, const char* outcome)
  {
    auto& p = m_nodes[id].pending[slot];
    if (p.done)
      return;
    p.done = true;
    auto l = line(id, APP, "ev", p.interest, outcome);
    m_lines.push_back(l);
  }

  void
  toApp(NodeId id, const ndn::Packet& p)
  {
    auto& n = m_nodes[id];
    if (const auto* i = std::get_if<ndn::Interest>(&p)) {
      if (n.producer && isScriptedProducerName(i->name))
        data(id, APP, scriptedReply(*i));
      return;
    }
    std::vector<size_t> hits;
    for (size_t k = 0; k < n.pending.size(); ++k) {
      const auto& pi = n.pending[k];
      if (pi.done)
        continue;
      if (const auto* d = std::get_if<ndn::Data>(&p)) {
        if (pi.interest.name == d->name || (pi.interest.canBePrefix && pi.interest.name.isPrefixOf(d->name)))
          hits.push_back(k);
      }
      else {
        const auto& nk = std::get<ndn::Nack>(p);
        if (pi.interest.name == nk.interest.name && pi.interest.nonce == nk.interest.nonce)
          hits.push_back(k);
      }
    }
    for (auto k : hits)
      complete(id, k, std::holds_alternative<ndn::Data>(p) ? "data" : "nack");
  }

  void
  recordOut(PitRec& e, FaceId face, uint32_t nonce)
  {
    for (auto& o : e.out) {
      if (o.face == face) {
        o.nonce = nonce;
        return;
      }
    }
    e.out.push_back({face, nonce});
  }

  void
  interest(NodeId id, FaceId inFace, const ndn::Interest& i)
  {
    auto& n = m_nodes[id];
    size_t rx = m_lines.size();
    m_lines.push_back(line(id, inFace, "rx", i, ""));
    auto verdict = [&] (const std::string& v) { m_lines[rx] += v; };
    expire(n);

    bool scoped = localhop(i.name) && inFace == AIR;
    if (scoped) {
      const Route* r = lpm(n, i.name);
      bool anyApp = false;
      if (r != nullptr) {
        for (auto f : r->hops)
          anyApp = anyApp || f != AIR;
      }
      if (!anyApp)
        return verdict("drop_scope");
    }

    if (auto hit = n.cs.find(i, m_now)) {
      verdict("cs_hit");
      send(id, inFace, *hit);
      return;
    }

    Time expiry = m_now + Duration(i.lifetime);
    PitRec* e = pitFind(n, i.name);
    if (e == nullptr) {
      n.pit.push_back({i.name, i.canBePrefix, {{inFace, i.nonce, expiry}}, {}, expiry});
      e = &n.pit.back();
    }
    else {
      for (const auto& r : e->in) {
        if (r.nonce == i.nonce)
          return verdict("drop_duplicate");
      }
      for (const auto& r : e->out) {
        if (r.nonce == i.nonce)
          return verdict("drop_duplicate");
      }
      bool replaced = false;
      for (auto& r : e->in) {
        if (r.face == inFace) {
          r = {inFace, i.nonce, expiry};
          replaced = true;
        }
      }
      if (!replaced)
        e->in.push_back({inFace, i.nonce, expiry});
      e->canBePrefix = e->canBePrefix || i.canBePrefix;
      Time latest = e->in.front().expiry;
      for (const auto& r : e->in)
        latest = std::max(latest, r.expiry);
      e->expiry = latest;
      return verdict("aggregated");
    }

    const Route* route = lpm(n, i.name);
    std::vector<FaceId> hops = route ? route->hops : std::vector<FaceId>{};
    ndn::Name entryName = i.name;

    if (m_sc.strategy == fw::Strategy::Multicast) {
      std::vector<FaceId> out;
      for (auto f : hops) {
        if (f != inFace && !(scoped && f == AIR))
          out.push_back(f);
      }
      if (out.empty()) {
        pitErase(n, entryName);
        verdict("nack_noroute");
        send(id, inFace, ndn::Nack{ndn::NackReason::NoRoute, i});
        return;
      }
      verdict("forwarded");
      for (auto f : out) {
        recordOut(*pitFind(n, entryName), f, i.nonce);
        send(id, f, i);
      }
      return;
    }

    bool lh = localhop(i.name);
    std::vector<FaceId> out;
    for (auto f : hops) {
      if (f == AIR ? (lh && inFace != AIR) : f != inFace)
        out.push_back(f);
    }
    if (out.empty() && lh)
      return verdict("no_nexthop");
    verdict("forwarded");
    for (auto f : out) {
      recordOut(*pitFind(n, entryName), f, i.nonce);
      send(id, f, i);
    }
    if (!lh) {
      auto delay = scriptedJitter(id, n.jitterCalls++);
      after(delay, [this, id, entryName, i] {
        auto* pe = pitFind(m_nodes[id], entryName);
        if (pe == nullptr || pe->expiry <= m_now)
          return;
        bool carries = false;
        for (const auto& r : pe->in)
          carries = carries || r.nonce == i.nonce;
        if (!carries)
          return;
        recordOut(*pe, AIR, i.nonce);
        send(id, AIR, i);
      });
    }
  }

  void
  data(NodeId id, FaceId inFace, const ndn::Data& d)
  {
    auto& n = m_nodes[id];
    size_t rx = m_lines.size();
    m_lines.push_back(line(id, inFace, "rx", d, ""));
    expire(n);

    std::vector<PitRec> matched;
    for (size_t len = 1; len <= d.name.size(); ++len) {
      auto prefix = d.name.getPrefix(len);
      auto* e = pitFind(n, prefix);
      if (e != nullptr && (len == d.name.size() || e->canBePrefix)) {
        matched.push_back(*e);
        pitErase(n, prefix);
      }
    }
    if (matched.empty()) {
      m_lines[rx] += "drop_unsolicited";
      return;
    }
    m_lines[rx] += "satisfied";
    n.cs.insert(d, m_now);
    std::vector<FaceId> down;
    for (const auto& e : matched) {
      for (const auto& r : e.in) {
        if (r.face != inFace && std::find(down.begin(), down.end(), r.face) == down.end())
          down.push_back(r.face);
      }
    }
    for (auto f : down)
      send(id, f, d);
  }

  void
  nack(NodeId id, FaceId inFace, const ndn::Nack& nk)
  {
    auto& n = m_nodes[id];
    size_t rx = m_lines.size();
    m_lines.push_back(line(id, inFace, "rx", nk, ""));
    expire(n);
    if (m_sc.strategy == fw::Strategy::MulticastVanet) {
      m_lines[rx] += "absorbed";
      return;
    }
    auto* e = pitFind(n, nk.interest.name);
    bool ours = false;
    if (e != nullptr) {
      for (const auto& o : e->out)
        ours = ours || o.nonce == nk.interest.nonce;
    }
    if (!ours) {
      m_lines[rx] += "ignored";
      return;
    }
    PitRec consumed = *e;
    pitErase(n, nk.interest.name);
    m_lines[rx] += "consumed";
    for (const auto& r : consumed.in) {
      if (r.face == inFace)
        continue;
      ndn::Interest down = nk.interest;
      down.nonce = r.nonce;
      send(id, r.face, ndn::Nack{nk.reason, down});
    }
  }

private:
  const EqScenario& m_sc;
  std::vector<RNode> m_nodes;
  std::vector<Event> m_events;
  std::vector<std::string> m_lines;
  Time m_now{0};
  uint64_t m_seq = 0;
};

} // namespace

std::vector<std::string>
runReferenceTrace(const EqScenario& scenario)
{
  return Reference(scenario).run();
}

std::vector<ScriptedInterest>
randomScript(Rng& rng, size_t nodes, size_t maxInterests)
{
  static const std::vector<ndn::Name> names{
    ndn::Name{"service", "traffic", "e1", "0"},
    ndn::Name{"service", "traffic", "e2", "0"},
    ndn::Name{"service", "traffic", "e1"},
    ndn::Name{"localhop", "beacon", "1", "passenger", "e1", "0", "0", "0", "0"},
    ndn::Name{"other", "x"},
  };
  static const std::vector<Time> times{
    Time{0}, std::chrono::microseconds(200), std::chrono::milliseconds(1), std::chrono::milliseconds(5),
    std::chrono::milliseconds(150), std::chrono::milliseconds(2100),
  };

  std::vector<ScriptedInterest> script;
  size_t count = uniformInt(rng, 1, maxInterests);
  for (size_t k = 0; k < count; ++k) {
    ScriptedInterest s;
    s.node = static_cast<NodeId>(uniformInt(rng, 0, nodes - 1));
    s.at = times[uniformInt(rng, 0, times.size() - 1)];
    s.interest.name = names[uniformInt(rng, 0, names.size() - 1)];
    s.interest.canBePrefix = s.interest.name.size() == 3;
    s.interest.nonce = static_cast<uint32_t>(uniformInt(rng, 1, 4));
    s.interest.lifetime = uniformInt(rng, 0, 3) == 0 ? std::chrono::milliseconds(100)
                                                     : std::chrono::milliseconds(2000);
    script.push_back(s);
  }
  return script;
}

std::vector<EqScenario>
enumerateScenarios(uint64_t seed, size_t scriptsPerLayout)
{
  const std::vector<sim::Position> candidates{{0, 0}, {60, 0}, {120, 0}, {60, 50}, {180, 0}};
  const std::vector<size_t> capacities{1000, 1, 0};
  Rng rng(seed);
  std::vector<EqScenario> out;

  for (unsigned mask = 1; mask < (1u << candidates.size()); ++mask) {
    std::vector<sim::Position> layout;
    for (size_t k = 0; k < candidates.size(); ++k) {
      if (mask & (1u << k))
        layout.push_back(candidates[k]);
    }
    if (layout.size() < 2 || layout.size() > 4)
      continue;
    for (int producerChoice = 0; producerChoice < 3; ++producerChoice) {
      for (auto strategy : {fw::Strategy::Multicast, fw::Strategy::MulticastVanet}) {
        for (size_t s = 0; s < scriptsPerLayout; ++s) {
          EqScenario sc;
          sc.positions = layout;
          sc.producer.assign(layout.size(), false);
          if (producerChoice == 1)
            sc.producer.front() = true;
          else if (producerChoice == 2)
            sc.producer.back() = true;
          sc.strategy = strategy;
          sc.csCapacity = capacities[out.size() % capacities.size()];
          sc.script = randomScript(rng, layout.size(), 6);
          out.push_back(std::move(sc));
        }
      }
    }
  }
  return out;
}

} // namespace vndn::tests
