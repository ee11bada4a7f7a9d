#include "vndn/fw/forwarder.hpp"
#include "vndn/ndn/naming.hpp"

#include "equivalence.hpp"

#include "doctest.h"

#include <map>

using namespace vndn;
using namespace vndn::fw;
using ndn::Name;
using std::chrono::milliseconds;

namespace {

struct RecordingLink : WirelessLink
{
  void
  transmit(const ndn::Packet& packet) override
  {
    sent.push_back(packet);
  }

  std::vector<ndn::Packet> sent;
};

struct RecordingApp : AppHandler
{
  void
  onInterest(const ndn::Interest& interest) override
  {
    received.push_back(interest);
  }

  std::vector<ndn::Interest> received;
};

struct Outcomes
{
  int data = 0;
  int nack = 0;
  int timeout = 0;
  std::vector<Time> at;

  ConsumerCallbacks
  callbacks(sim::Scheduler& s)
  {
    return {[this, &s] (const ndn::Data&) { ++data; at.push_back(s.now()); },
            [this, &s] (const ndn::Nack&) { ++nack; at.push_back(s.now()); },
            [this, &s] { ++timeout; at.push_back(s.now()); }};
  }

  int
  total() const
  {
    return data + nack + timeout;
  }
};

struct Fixture
{
  explicit
  Fixture(Strategy strategy = Strategy::Multicast, size_t cs = 100)
    : fwd(1, scheduler, link, ForwarderConfig{strategy, cs, milliseconds(10)}, 5, &trace)
  {
  }

  ndn::Interest
  interest(const std::string& uri, uint32_t nonce = 1)
  {
    ndn::Interest i;
    i.name = Name::parseUri(uri);
    i.nonce = nonce;
    return i;
  }

  void
  fromAirAt(Duration at, ndn::Packet p)
  {
    scheduler.scheduleAt(at, [this, p] { fwd.receiveFromAir(p); });
  }

  sim::Scheduler scheduler;
  RecordingLink link;
  PacketTrace trace;
  Forwarder fwd;
};

size_t
countVerdict(const PacketTrace& t, std::string_view verdict)
{
  size_t n = 0;
  for (const auto& r : t.records())
    n += r.verdict == verdict ? 1 : 0;
  return n;
}

} // namespace

TEST_SUITE("forwarder") {

TEST_CASE("scope rule")
{
  table::Face air{0, table::FaceKind::WirelessAdhoc, 0};
  table::Face app{1, table::FaceKind::App, 0};
  ndn::Interest beacon;
  beacon.name = Name::parseUri("/localhop/beacon/1/passenger/e/0/0/0/0");
  ndn::Interest traffic;
  traffic.name = ndn::makeTrafficName("e", 1);
  CHECK(violatesScope(beacon, air, air));
  CHECK_FALSE(violatesScope(beacon, app, air));
  CHECK_FALSE(violatesScope(beacon, air, app));
  CHECK_FALSE(violatesScope(traffic, air, air));
}

TEST_CASE("beacon from the air reaches the local app only")
{
  for (auto strategy : {Strategy::Multicast, Strategy::MulticastVanet}) {
    Fixture f(strategy);
    RecordingApp app;
    auto face = f.fwd.addAppFace(app);
    f.fwd.addRoute(ndn::beaconPrefix(), 0);
    f.fwd.registerPrefix(face, ndn::beaconPrefix());
    f.fromAirAt(Time{0}, f.interest("/localhop/beacon/2/passenger/e/0/0/0/0"));
    f.scheduler.runUntil(milliseconds(100));
    CHECK(app.received.size() == 1);
    CHECK(f.link.sent.empty());
  }
}

TEST_CASE("localhop from the air without a local app is dropped")
{
  Fixture f;
  f.fwd.addRoute(ndn::beaconPrefix(), 0);
  f.fwd.receiveFromAir(f.interest("/localhop/beacon/2/passenger/e/0/0/0/0"));
  CHECK(f.fwd.counters().dropsScope == 1);
  CHECK(f.link.sent.empty());
}

TEST_CASE("content store hit answers on the incoming face")
{
  Fixture f;
  f.fwd.cs().insert(ndn::Data{Name{"a"}, "v", milliseconds(1000)}, Time{0});
  f.fwd.receiveFromAir(f.interest("/a"));
  REQUIRE(f.link.sent.size() == 1);
  CHECK(std::holds_alternative<ndn::Data>(f.link.sent[0]));
  CHECK(f.fwd.pit().empty());
  CHECK(f.fwd.counters().csHits == 1);
}

TEST_CASE("looped interest is dropped as duplicate")
{
  Fixture f;
  RecordingApp app;
  auto face = f.fwd.addAppFace(app);
  f.fwd.addRoute(Name{"service"}, 0);
  f.fwd.expressInterest(face, f.interest("/service/x", 7), {});
  CHECK(f.link.sent.size() == 1);
  f.fwd.receiveFromAir(f.interest("/service/x", 7));
  CHECK(f.fwd.counters().dropsDuplicate == 1);
  CHECK(f.link.sent.size() == 1);
}

TEST_CASE("multicast dispatch")
{
  SUBCASE("single wireless next hop")
  {
    Fixture f;
    RecordingApp app;
    auto face = f.fwd.addAppFace(app);
    f.fwd.addRoute(Name{"service"}, 0);
    f.fwd.expressInterest(face, f.interest("/service/traffic/e3/42"), {});
    CHECK(f.link.sent.size() == 1);
    CHECK(f.fwd.counters().interestsSent == 1);
  }
  SUBCASE("empty FIB answers NoRoute")
  {
    Fixture f;
    RecordingApp app;
    Outcomes out;
    auto face = f.fwd.addAppFace(app);
    f.fwd.expressInterest(face, f.interest("/x"), out.callbacks(f.scheduler));
    f.scheduler.runUntil(milliseconds(5000));
    CHECK(out.nack == 1);
    CHECK(out.total() == 1);
    CHECK(f.fwd.pit().empty());
    CHECK(f.link.sent.empty());
  }
  SUBCASE("next-hop subsets")
  {
    // faces: 0 wireless, 1 and 2 apps; every subset of next hops, every ingress
    for (unsigned mask = 1; mask < 8; ++mask) {
      for (FaceId in : {0u, 1u, 2u}) {
        for (bool localhop : {false, true}) {
          Fixture f;
          RecordingApp a1, a2;
          f.fwd.addAppFace(a1);
          f.fwd.addAppFace(a2);
          Name prefix = localhop ? Name{"localhop", "p"} : Name{"p"};
          for (FaceId hop = 0; hop < 3; ++hop) {
            if (mask & (1u << hop))
              f.fwd.addRoute(prefix, hop);
          }
          auto i = f.interest(prefix.toUri() + "/x");
          std::vector<FaceId> expected;
          for (FaceId hop = 0; hop < 3; ++hop) {
            bool scoped = localhop && in == 0 && hop == 0;
            if ((mask & (1u << hop)) && hop != in && !scoped)
              expected.push_back(hop);
          }
          bool scopeDrop = localhop && in == 0 && (mask & 6u) == 0;
          if (in == 0)
            f.fwd.receiveFromAir(i);
          else
            f.fwd.expressInterest(in, i, {});
          f.scheduler.runUntil(milliseconds(1));

          std::vector<FaceId> got;
          bool nackBack = false;
          for (const auto& r : f.trace.records()) {
            if (r.dir != TraceDirection::Tx)
              continue;
            if (r.packetType == "interest")
              got.push_back(r.faceKind == table::FaceKind::WirelessAdhoc ? 0 : (r.name.empty() ? 9 : 99));
            if (r.packetType == "nack")
              nackBack = true;
          }
          CAPTURE(mask);
          CAPTURE(in);
          CAPTURE(localhop);
          if (scopeDrop) {
            CHECK(f.fwd.counters().dropsScope == 1);
            continue;
          }
          CHECK(nackBack == expected.empty());
          CHECK(got.size() == expected.size());
          CHECK(a1.received.size() == static_cast<size_t>(std::count(expected.begin(), expected.end(), 1u)));
          CHECK(a2.received.size() == static_cast<size_t>(std::count(expected.begin(), expected.end(), 2u)));
          CHECK(f.link.sent.size() ==
                static_cast<size_t>(std::count(expected.begin(), expected.end(), 0u)) + (nackBack && in == 0));
        }
      }
    }
  }
}

TEST_CASE("multicast-vanet dispatch")
{
  SUBCASE("empty FIB still broadcasts after jitter, never Nacks")
  {
    Fixture f(Strategy::MulticastVanet);
    RecordingApp app;
    auto face = f.fwd.addAppFace(app);
    f.fwd.expressInterest(face, f.interest("/x"), {});
    CHECK(f.link.sent.empty());
    f.scheduler.runUntil(milliseconds(10));
    CHECK(f.link.sent.size() == 1);
    CHECK(f.fwd.counters().nacksSent == 0);
  }
  SUBCASE("jitter stays within bounds")
  {
    Fixture f(Strategy::MulticastVanet);
    for (uint32_t k = 0; k < 200; ++k) {
      auto at = milliseconds(20 * k);
      f.fromAirAt(at, f.interest("/x/" + std::to_string(k), k));
    }
    std::vector<Time> sendTimes;
    f.scheduler.runUntil(milliseconds(5000));
    for (const auto& r : f.trace.records()) {
      if (r.dir == TraceDirection::Tx) {
        auto k = std::stoul(r.name.substr(3));
        auto delay = r.time - milliseconds(20 * k);
        CHECK(delay >= Duration::zero());
        CHECK(delay <= milliseconds(10));
      }
    }
    CHECK(f.link.sent.size() == 200);
  }
  SUBCASE("received Nack is absorbed and later Data still satisfies")
  {
    Fixture f(Strategy::MulticastVanet);
    RecordingApp app;
    Outcomes out;
    auto face = f.fwd.addAppFace(app);
    auto i = f.interest("/service/traffic/e/0", 3);
    f.fwd.expressInterest(face, i, out.callbacks(f.scheduler));
    f.fromAirAt(milliseconds(20), ndn::Nack{ndn::NackReason::NoRoute, i});
    f.fromAirAt(milliseconds(30), ndn::Data{i.name, "v", milliseconds(100)});
    f.scheduler.runUntil(milliseconds(3000));
    CHECK(out.data == 1);
    CHECK(out.total() == 1);
    CHECK(countVerdict(f.trace, "absorbed") == 1);
  }
  SUBCASE("relay once, drop the echo")
  {
    Fixture f(Strategy::MulticastVanet);
    f.fromAirAt(Time{0}, f.interest("/service/x", 4));
    f.fromAirAt(milliseconds(15), f.interest("/service/x", 4));
    f.scheduler.runUntil(milliseconds(100));
    CHECK(f.link.sent.size() == 1);
    CHECK(f.fwd.counters().dropsDuplicate == 1);
  }
  SUBCASE("rebroadcast skipped once satisfied")
  {
    Fixture f(Strategy::MulticastVanet);
    f.fwd.setJitterSource([] { return milliseconds(10); });
    f.fromAirAt(Time{0}, f.interest("/service/x", 4));
    f.fromAirAt(milliseconds(5), ndn::Data{Name{"service", "x"}, "v", milliseconds(100)});
    f.scheduler.runUntil(milliseconds(100));
    // the Data is not sent back on its arrival face and the Interest is not rebroadcast
    CHECK(f.link.sent.empty());
  }
}

TEST_CASE("incoming data")
{
  SUBCASE("unsolicited")
  {
    Fixture f;
    f.fwd.receiveFromAir(ndn::Data{Name{"a"}, "", {}});
    CHECK(f.fwd.counters().dropsUnsolicited == 1);
    CHECK(f.fwd.cs().size() == 0);
  }
  SUBCASE("app and wireless downstream, satisfied from wireless")
  {
    Fixture f;
    RecordingApp app;
    Outcomes out;
    auto face = f.fwd.addAppFace(app);
    f.fwd.addRoute(Name{"a"}, 0);
    f.fwd.expressInterest(face, f.interest("/a", 1), out.callbacks(f.scheduler));
    f.fwd.receiveFromAir(f.interest("/a", 2));
    CHECK(f.fwd.pit().find(Name{"a"})->inRecords.size() == 2);
    size_t before = f.link.sent.size();
    f.fwd.receiveFromAir(ndn::Data{Name{"a"}, "v", milliseconds(100)});
    f.scheduler.runUntil(milliseconds(1));
    CHECK(out.data == 1);
    CHECK(f.link.sent.size() == before);
    CHECK(f.fwd.cs().size() == 1);
  }
  SUBCASE("two aggregated app faces each get one copy")
  {
    Fixture f;
    RecordingApp a1, a2;
    Outcomes o1, o2;
    auto f1 = f.fwd.addAppFace(a1);
    auto f2 = f.fwd.addAppFace(a2);
    f.fwd.addRoute(Name{"a"}, 0);
    f.fwd.expressInterest(f1, f.interest("/a", 1), o1.callbacks(f.scheduler));
    f.fwd.expressInterest(f2, f.interest("/a", 2), o2.callbacks(f.scheduler));
    CHECK(f.link.sent.size() == 1);
    f.fwd.receiveFromAir(ndn::Data{Name{"a"}, "v", milliseconds(100)});
    f.scheduler.runUntil(milliseconds(1));
    CHECK(o1.data == 1);
    CHECK(o2.data == 1);
  }
}

TEST_CASE("first event wins")
{
  auto scenario = [] (Strategy strategy, Duration dataAt, Duration nackAt) {
    Fixture f(strategy);
    RecordingApp app;
    Outcomes out;
    auto face = f.fwd.addAppFace(app);
    f.fwd.addRoute(Name{"service"}, 0);
    auto i = f.interest("/service/traffic/e/0", 3);
    f.fwd.expressInterest(face, i, out.callbacks(f.scheduler));
    f.scheduler.runUntil(milliseconds(1));
    f.fromAirAt(dataAt, ndn::Data{i.name, "v", milliseconds(100)});
    f.fromAirAt(nackAt, ndn::Nack{ndn::NackReason::NoRoute, i});
    f.scheduler.runUntil(milliseconds(5000));
    REQUIRE(out.total() == 1);
    return out;
  };
  CHECK(scenario(Strategy::Multicast, milliseconds(50), milliseconds(60)).data == 1);
  CHECK(scenario(Strategy::Multicast, milliseconds(15), milliseconds(5)).nack == 1);
  CHECK(scenario(Strategy::MulticastVanet, milliseconds(15), milliseconds(5)).data == 1);

  Fixture f;
  RecordingApp app;
  Outcomes out;
  auto face = f.fwd.addAppFace(app);
  f.fwd.addRoute(Name{"service"}, 0);
  auto i = f.interest("/service/x");
  i.lifetime = milliseconds(700);
  f.fwd.expressInterest(face, i, out.callbacks(f.scheduler));
  f.scheduler.runUntil(milliseconds(5000));
  CHECK(out.timeout == 1);
  CHECK(out.total() == 1);
  CHECK(out.at.at(0) == milliseconds(700));
}

TEST_CASE("silent timeout")
{
  Fixture f;
  RecordingApp app;
  Outcomes out;
  auto face = f.fwd.addAppFace(app);
  f.fwd.addRoute(ndn::beaconPrefix(), 0);
  f.fwd.expressInterest(face, f.interest("/localhop/beacon/1/passenger/e/0/0/0/0"), out.callbacks(f.scheduler),
                        true);
  f.scheduler.runUntil(milliseconds(5000));
  CHECK(out.total() == 0);
  CHECK(f.fwd.pendingAppInterests() == 0);
  CHECK(f.fwd.outcomesDelivered() == 1);
}

TEST_CASE("prefix registration")
{
  Fixture f;
  RecordingApp app;
  auto face = f.fwd.addAppFace(app);
  f.fwd.registerPrefix(face, ndn::trafficPrefix());
  CHECK_THROWS_AS(f.fwd.registerPrefix(face, ndn::trafficPrefix()), Forwarder::DuplicatePrefix);
  f.fwd.receiveFromAir(f.interest("/service/traffic/e3/42"));
  f.fwd.receiveFromAir(f.interest("/localhop/beacon/1/passenger/e/0/0/0/0"));
  f.scheduler.runUntil(milliseconds(1));
  REQUIRE(app.received.size() == 1);
  CHECK(app.received[0].name == Name::parseUri("/service/traffic/e3/42"));

  Fixture g;
  RecordingApp other;
  g.fwd.registerPrefix(g.fwd.addAppFace(other), ndn::trafficPrefix());
  g.fwd.receiveFromAir(g.interest("/service/traffic/e3/42"));
  g.scheduler.runUntil(milliseconds(1));
  CHECK(other.received.size() == 1);
}

TEST_CASE("trace invariants on enumerated scenarios")
{
  auto scenarios = tests::enumerateScenarios(99, 1);
  REQUIRE(scenarios.size() > 100);
  for (size_t k = 0; k < scenarios.size(); ++k) {
    const auto& sc = scenarios[k];
    CAPTURE(k);
    std::vector<TraceRecord> records;
    for (const auto& line : tests::runRealTrace(sc))
      records.push_back(parseTraceLine(line));

    std::map<std::pair<std::string, uint32_t>, int> outcomes;
    for (size_t r = 0; r < records.size(); ++r) {
      const auto& rec = records[r];
      bool wireless = rec.faceKind == table::FaceKind::WirelessAdhoc;
      if (sc.strategy == Strategy::MulticastVanet)
        CHECK_FALSE((rec.dir == TraceDirection::Tx && wireless && rec.packetType == "nack"));

      if (rec.dir == TraceDirection::Tx && wireless && rec.packetType == "interest" &&
          rec.name.rfind("/localhop", 0) == 0) {
        // it was handed down by a local app, not heard over the air
        const TraceRecord* cause = nullptr;
        for (size_t q = 0; q < r; ++q) {
          const auto& prev = records[q];
          if (prev.node == rec.node && prev.dir == TraceDirection::Rx && prev.name == rec.name &&
              prev.nonce == rec.nonce)
            cause = &prev;
        }
        REQUIRE(cause != nullptr);
        CHECK((cause->faceKind == table::FaceKind::App));
      }

      if (rec.dir == TraceDirection::Tx && rec.packetType == "data") {
        // only in answer to an Interest the node saw for a prefix of this name
        bool asked = false;
        for (size_t q = 0; q < r && !asked; ++q) {
          const auto& prev = records[q];
          asked = prev.node == rec.node && prev.dir == TraceDirection::Rx && prev.packetType == "interest" &&
                  ndn::Name::parseUri(prev.name).isPrefixOf(ndn::Name::parseUri(rec.name));
        }
        CHECK(asked);
      }
      if (rec.dir == TraceDirection::Event)
        ++outcomes[{rec.name + "@" + std::to_string(rec.node), *rec.nonce}];
    }
    std::map<std::pair<std::string, uint32_t>, int> expressed;
    for (const auto& s : sc.script)
      ++expressed[{s.interest.name.toUri() + "@" + std::to_string(s.node), s.interest.nonce}];
    CHECK(outcomes == expressed);
  }
}

TEST_CASE("reference forwarder agrees on a sample of scenarios")
{
  auto scenarios = tests::enumerateScenarios(7, 1);
  for (size_t k = 0; k < scenarios.size(); k += 7) {
    CAPTURE(k);
    CHECK(tests::runRealTrace(scenarios[k]) == tests::runReferenceTrace(scenarios[k]));
  }
}

} // TEST_SUITE
