#include "vndn/experiment/runner.hpp"
#include "vndn/experiment/scenario.hpp"
#include "vndn/experiment/sweep.hpp"

#include "generators.hpp"

#include "doctest.h"

#include <cmath>
#include <numeric>
#include <sstream>

using namespace vndn;
using namespace vndn::experiment;
using nlohmann::json;

namespace {

json
smallScenario()
{
  return json::parse(R"({
    "seed": 3,
    "duration_s": 20,
    "map": {"type": "grid", "rows": 3, "cols": 3, "block": 100},
    "density_per_km2": 1000,
    "n_rsus": 1,
    "cache_capacity": 1000,
    "strategy": "multicast-vanet",
    "apps": {"beacon": {"enabled": true, "interval_ms": 1000},
             "tms": {"enabled": true, "query_interval_ms": 5000}}
  })");
}

/// Path reported when \p patch is merged into the small scenario.
std::string
pathOf(const json& patch)
{
  try {
    json doc = smallScenario();
    if (patch.is_object())
      doc.merge_patch(patch);
    else
      doc = patch;
    ScenarioConfig::fromJson(doc);
  }
  catch (const ConfigError& e) {
    return e.path();
  }
  return "<accepted>";
}

double
tQuantile975(size_t df)
{
  // two-sided 95% Student t quantiles
  static const std::map<size_t, double> table{{1, 12.706204736}, {2, 4.302652730}, {4, 2.776445105},
                                              {9, 2.262157163}, {19, 2.093024054}};
  return table.at(df);
}

ResultRow
randomRow(tests::Rng& rng, uint64_t id)
{
  std::uniform_real_distribution<double> u(0, 1000);
  ResultRow r;
  r.runId = id;
  r.seed = rng();
  r.strategy = std::array{"none", "multicast", "multicast-vanet"}[rng() % 3];
  r.density = u(rng);
  r.nRsus = static_cast<int>(rng() % 5);
  r.cacheSize = rng() % 5000;
  r.interestsSent = rng() % 100000;
  r.dataSent = rng() % 100000;
  r.nacksSent = rng() % 100000;
  r.totalPackets = r.interestsSent + r.dataSent + r.nacksSent;
  r.csHits = rng() % 1000;
  r.satisfactionRatio = u(rng) / 1000;
  r.completedTrips = rng() % 500;
  r.meanTravelTimeS = u(rng);
  r.stdTravelTimeS = u(rng) / 7;
  r.reroutes = rng() % 50;
  return r;
}

} // namespace

TEST_SUITE("experiment") {

TEST_CASE("empty world produces nothing")
{
  auto doc = smallScenario();
  doc["density_per_km2"] = 0;
  auto report = runScenario(ScenarioConfig::fromJson(doc));
  CHECK(report.interestsSent == 0);
  CHECK(report.dataSent == 0);
  CHECK(report.nacksSent == 0);
  CHECK(report.totalPackets == 0);
  CHECK(report.vehiclesSpawned == 0);
  CHECK(report.completedTrips == 0);
  CHECK(report.satisfactionRatio == 0);
  CHECK(report.meanTravelTimeS == 0);
  CHECK(report.stdTravelTimeS == 0);
  CHECK(report.apps == apps::AppMetrics{});
}

TEST_CASE("RSU covering the whole map answers every query")
{
  auto doc = json::parse(R"({
    "seed": 8,
    "duration_s": 60,
    "map": {"type": "grid", "rows": 2, "cols": 2, "block": 50},
    "density_per_km2": 800,
    "n_rsus": 1,
    "cache_capacity": 1000,
    "rsu_positions": [[25, 25]],
    "strategy": "multicast-vanet",
    "apps": {"beacon": {"enabled": false}}
  })");
  fw::PacketTrace trace;
  auto report = runScenario(ScenarioConfig::fromJson(doc), &trace);
  CHECK(report.vehiclesSpawned >= 2);
  CHECK(report.apps.trafficInterests > 0);
  CHECK(report.apps.trafficData == report.apps.trafficInterests);
  CHECK(report.satisfactionRatio == 1.0);
  CHECK(report.nacksSent == 0);
  CHECK(report.apps.producerReplies > 0);
  CHECK(trace.size() > 0);
  for (const auto& rec : trace.records())
    CHECK(fw::parseTraceLine(fw::formatTraceLine(rec)) == rec);
}

TEST_CASE("runs are deterministic and self-consistent")
{
  auto config = ScenarioConfig::fromJson(smallScenario());
  auto a = runScenario(config);
  auto b = runScenario(config);
  CHECK(a == b);
  CHECK(a.eventsExecuted > 0);

  for (auto strategy : {"none", "multicast", "multicast-vanet"}) {
    auto doc = smallScenario();
    doc["strategy"] = strategy;
    auto r = runScenario(ScenarioConfig::fromJson(doc));
    CAPTURE(strategy);
    CHECK(r.totalPackets == r.interestsSent + r.dataSent + r.nacksSent);
    CHECK(r.satisfactionRatio >= 0);
    CHECK(r.satisfactionRatio <= 1);
    CHECK(r.completedTrips == r.travelTimesS.size());
    CHECK(r.completedTrips <= r.vehiclesSpawned);
    CHECK(r.apps.trafficData + r.apps.trafficNacks + r.apps.trafficTimeouts <= r.apps.trafficInterests);
    if (std::string(strategy) == "multicast-vanet")
      CHECK(r.nacksSent == 0);
    if (std::string(strategy) == "none")
      CHECK(r.apps.trafficInterests == 0);
  }

  auto other = smallScenario();
  other["seed"] = 4;
  CHECK(runScenario(ScenarioConfig::fromJson(other)).executionDigest != a.executionDigest);
}

TEST_CASE("sample standard deviation")
{
  CHECK(sampleStdDev({}) == 0);
  CHECK(sampleStdDev({3}) == 0);
  CHECK(sampleStdDev({2, 4, 4, 4, 5, 5, 7, 9}) == doctest::Approx(std::sqrt(32.0 / 7)));
}

TEST_CASE("scenario parsing")
{
  auto config = ScenarioConfig::fromJson(smallScenario());
  CHECK(config.seed == 3);
  CHECK(config.durationS == 20);
  CHECK(config.map.kind == MapSpec::Kind::Grid);
  CHECK(config.densityPerKm2 == 1000);
  CHECK(config.strategy.enabled);
  CHECK((config.strategy.strategy == fw::Strategy::MulticastVanet));
  CHECK(config.strategy.name() == "multicast-vanet");
  CHECK(config.beacon.config.interval == std::chrono::milliseconds(1000));
  CHECK(config.map.lanes == 1);

  auto highway = smallScenario();
  highway["map"] = {{"type", "highway"}};
  auto hc = ScenarioConfig::fromJson(highway);
  CHECK((hc.map.kind == MapSpec::Kind::Highway));
  CHECK(hc.map.length == 2000);
  CHECK(hc.map.lanes == 3);
  CHECK(pathOf(json::parse(R"({"map": {"type": "grid", "lanes": 0}})")) == "map.lanes");

  CHECK(pathOf(json::parse(R"({"radio": {"range_m": -1}})")) == "radio.range_m");
  CHECK(pathOf(json::parse(R"({"radio": {"loss_probability": 2}})")) == "radio.loss_probability");
  CHECK(pathOf(json::parse(R"({"bogus": 1})")) == "bogus");
  CHECK(pathOf(json::parse(R"({"radio": {"rangem": 70}})")) == "radio.rangem");
  CHECK(pathOf(json::parse(R"({"strategy": "flood"})")) == "strategy");
  CHECK(pathOf(json::parse(R"({"density_per_km2": "many"})")) == "density_per_km2");
  CHECK(pathOf(json::parse(R"({"density_per_km2": -5})")) == "density_per_km2");
  CHECK(pathOf(json::parse(R"({"map": {"type": "ring"}})")) == "map.type");
  CHECK(pathOf(json::parse(R"({"n_rsus": 2, "rsu_positions": [[0, 0]]})")) == "rsu_positions");
  CHECK(pathOf(json::parse(R"({"rsu_positions": [[0]]})")) == "rsu_positions[0]");
  CHECK(pathOf(json::parse(R"({"apps": {"tms": {"improvement_margin": -1}}})")).rfind("apps.tms", 0) == 0);
  CHECK(pathOf(json::parse("[]")) == "$");
  CHECK(pathOf(json::parse(R"({"n_rsus": -1})")) == "n_rsus");
  CHECK(pathOf(json::parse(R"({"n_rsus": 1.5})")) == "n_rsus");
  CHECK(pathOf(json::parse("{}")) == "<accepted>");

  json missing = smallScenario();
  missing.erase("cache_capacity");
  try {
    ScenarioConfig::fromJson(missing);
    FAIL("accepted");
  }
  catch (const ConfigError& e) {
    CHECK(e.path() == "cache_capacity");
  }

  json built = smallScenario();
  built["n_rsus"] = 2;
  CHECK(ScenarioConfig::fromJson(built).nRsus == 2);

  auto none = smallScenario();
  none["strategy"] = "none";
  CHECK_FALSE(ScenarioConfig::fromJson(none).strategy.enabled);
  CHECK(ScenarioConfig::fromJson(none).strategy.name() == "none");
}

TEST_CASE("default RSU placement")
{
  mobility::Bounds b{0, 0, 300, 200};
  auto one = defaultRsuPositions(b, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].x == doctest::Approx(150));
  CHECK(one[0].y == doctest::Approx(100));
  auto two = defaultRsuPositions(b, 2);
  CHECK(two[0].x == doctest::Approx(100));
  CHECK(two[1].y == doctest::Approx(200.0 * 2 / 3));
}

TEST_CASE("factorial plan layout")
{
  FactorialPlan plan;
  plan.base = smallScenario();
  plan.factors["strategy"] = {"multicast", "multicast-vanet"};
  plan.factors["density_per_km2"] = {1000, 2000};
  plan.factors["n_rsus"] = {1, 2};
  plan.factors["cache_capacity"] = {0, 1000};
  plan.replications = 10;
  plan.seedBase = 500;
  CHECK(plan.runCount() == 160);

  // factor names sorted: cache_capacity, density_per_km2, n_rsus, strategy
  for (size_t i = 0; i < plan.runCount(); ++i) {
    auto s = plan.scenario(i);
    size_t combo = i / 10;
    CHECK(s.seed == 500 + i);
    CHECK(s.strategy.name() == (combo % 2 == 0 ? "multicast" : "multicast-vanet"));
    CHECK(s.nRsus == static_cast<int>((combo / 2) % 2 + 1));
    CHECK(s.densityPerKm2 == ((combo / 4) % 2 == 0 ? 1000 : 2000));
    CHECK(s.cacheCapacity == ((combo / 8) % 2 == 0 ? 0 : 1000));
  }
  CHECK_THROWS_AS(plan.scenario(160), std::out_of_range);

  FactorialPlan single;
  single.base = smallScenario();
  single.factors["radio.range_m"] = {50, 90};
  CHECK(single.runCount() == 2);
  CHECK(single.scenario(0).radio.range == 50);
  CHECK(single.scenario(1).radio.range == 90);
  CHECK(single.scenario(1).seed == 1);
}

TEST_CASE("factorial plan parsing")
{
  auto doc = json::parse(R"({"base": {}, "factors": {"strategy": ["none", "multicast"]},
                             "replications": 3, "seed_base": 7})");
  doc["base"] = smallScenario();
  auto plan = FactorialPlan::fromJson(doc);
  CHECK(plan.runCount() == 6);
  CHECK(plan.scenario(5).seed == 12);

  auto expectPath = [] (json d, const std::string& path) {
    try {
      FactorialPlan::fromJson(d);
      FAIL("accepted");
    }
    catch (const ConfigError& e) {
      CHECK(e.path() == path);
    }
  };
  expectPath(json::parse(R"({"factors": {}})"), "base");
  expectPath(json::parse(R"({"base": {}, "factors": {"strategy": []}})"), "factors.strategy");
  expectPath(json::parse(R"({"base": {}, "factors": {"seed": [1, 2]}})"), "factors.seed");
  expectPath(json::parse(R"({"base": {}, "factors": {}, "extra": 1})"), "extra");
}

TEST_CASE("factorial runs match single runs")
{
  FactorialPlan plan;
  plan.base = smallScenario();
  plan.base["duration_s"] = 8;
  plan.factors["strategy"] = {"multicast", "multicast-vanet"};
  plan.replications = 2;
  plan.seedBase = 40;
  auto rows = runFactorial(plan, 1);
  REQUIRE(rows.size() == 4);
  CHECK(runFactorial(plan, 3) == rows);
  for (size_t i = 0; i < rows.size(); ++i) {
    auto config = plan.scenario(i);
    CHECK(rows[i] == ResultRow::from(i, config, runScenario(config)));
    CHECK(rows[i].seed == 40 + i);
  }
}

TEST_CASE("result rows")
{
  auto config = ScenarioConfig::fromJson(smallScenario());
  MetricsReport report;
  report.interestsSent = 5;
  report.dataSent = 3;
  report.nacksSent = 1;
  report.totalPackets = 9;
  report.satisfactionRatio = 0.6;
  report.meanTravelTimeS = 42.5;
  auto row = ResultRow::from(7, config, report);
  CHECK(row.runId == 7);
  CHECK(row.seed == 3);
  CHECK(row.strategy == "multicast-vanet");
  CHECK(row.density == 1000);
  CHECK(row.nRsus == 1);
  CHECK(row.cacheSize == 1000);
  CHECK(row.totalPackets == 9);
  CHECK(columnValue(row, "satisfaction_ratio") == "0.6");
  CHECK(columnValue(row, "mean_travel_time_s") == "42.5");
  CHECK_THROWS(columnValue(row, "nope"));
}

TEST_CASE("csv")
{
  std::ostringstream os;
  writeCsv(os, {});
  std::string header;
  for (size_t i = 0; i < CSV_COLUMNS.size(); ++i)
    header += (i ? "," : "") + CSV_COLUMNS[i];
  CHECK(os.str() == header + "\n");
  CHECK(CSV_COLUMNS == std::vector<std::string>{
    "run_id", "seed", "strategy", "density", "n_rsus", "cache_size", "interests_sent", "data_sent",
    "nacks_sent", "total_packets", "cs_hits", "satisfaction_ratio", "completed_trips",
    "mean_travel_time_s", "std_travel_time_s", "reroutes"});

  tests::Rng rng(12);
  std::vector<ResultRow> rows;
  for (uint64_t i = 0; i < 200; ++i)
    rows.push_back(randomRow(rng, i));
  std::stringstream ss;
  writeCsv(ss, rows);
  CHECK(readCsv(ss) == rows);

  std::istringstream badHeader("run_id,seed\n1,2\n");
  CHECK_THROWS_AS(readCsv(badHeader), std::runtime_error);
  std::istringstream badField(header + "\n1,2,multicast,x,1,1,1,1,1,1,1,1,1,1,1,1\n");
  CHECK_THROWS_AS(readCsv(badField), std::runtime_error);
  std::istringstream shortRow(header + "\n1,2,multicast\n");
  CHECK_THROWS_AS(readCsv(shortRow), std::runtime_error);

  for (double v : {0.1, 1.0 / 3, 1e-9, 12345.678, 0.0, 2.5e300}) {
    CHECK(std::stod(formatNumber(v)) == v);
  }
  CHECK(formatNumber(0.5) == "0.5");
  CHECK(formatNumber(1000) == "1000");
}

TEST_CASE("confidence intervals")
{
  std::vector<double> v(10);
  std::iota(v.begin(), v.end(), 1.0);
  auto ci = meanCi95(v);
  double mean = 5.5;
  double ss = 0;
  for (double x : v)
    ss += (x - mean) * (x - mean);
  double s = std::sqrt(ss / 9);
  CHECK(s == doctest::Approx(3.0277).epsilon(1e-4));
  CHECK(ci.n == 10);
  CHECK(ci.mean == doctest::Approx(mean));
  CHECK(ci.halfWidth == doctest::Approx(tQuantile975(9) * s / std::sqrt(10.0)));
  CHECK(ci.halfWidth == doctest::Approx(2.166).epsilon(1e-3));

  CHECK(meanCi95({4, 4, 4}).halfWidth == 0);
  CHECK(meanCi95({1, 3}).halfWidth == doctest::Approx(tQuantile975(1) * std::sqrt(2.0) / std::sqrt(2.0)));
  CHECK_THROWS_AS(meanCi95({1}), InsufficientReplicates);
  CHECK_THROWS_AS(meanCi95({}), InsufficientReplicates);

  tests::Rng rng(30);
  for (size_t n : {2, 3, 5, 10, 20}) {
    std::vector<double> xs;
    for (size_t i = 0; i < n; ++i)
      xs.push_back(std::uniform_real_distribution<double>(-100, 100)(rng));
    auto c = meanCi95(xs);
    CHECK(c.halfWidth >= 0);
    CHECK(c.mean - c.halfWidth <= c.mean);
    CHECK(c.mean + c.halfWidth >= c.mean);
    if (n == 20 || n == 10 || n == 5 || n == 3 || n == 2) {
      double m = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
      CHECK(c.mean == doctest::Approx(m));
    }
  }
}

TEST_CASE("aggregation")
{
  std::vector<ResultRow> rows;
  auto add = [&] (std::string strategy, double density, double packets) {
    ResultRow r;
    r.strategy = std::move(strategy);
    r.density = density;
    r.totalPackets = static_cast<uint64_t>(packets);
    rows.push_back(r);
  };
  add("multicast", 1000, 10);
  add("multicast", 1000, 20);
  add("multicast", 2000, 30);
  add("multicast", 2000, 50);
  add("multicast-vanet", 1000, 5);
  add("multicast-vanet", 1000, 7);

  auto byStrategy = aggregate(rows, {"strategy"}, "total_packets");
  REQUIRE(byStrategy.size() == 2);
  CHECK(byStrategy.at({"multicast"}).mean == doctest::Approx(27.5));
  CHECK(byStrategy.at({"multicast"}).n == 4);
  CHECK(byStrategy.at({"multicast-vanet"}).mean == doctest::Approx(6));

  auto both = aggregate(rows, {"strategy", "density"}, "total_packets");
  CHECK(both.size() == 3);
  CHECK(both.at({"multicast", "2000"}).mean == doctest::Approx(40));
  CHECK(both.at({"multicast", "2000"}).halfWidth ==
        doctest::Approx(tQuantile975(1) * std::sqrt(200.0) / std::sqrt(2.0)));

  add("none", 1000, 1);
  CHECK_THROWS_AS(aggregate(rows, {"strategy"}, "total_packets"), InsufficientReplicates);
}

} // TEST_SUITE
