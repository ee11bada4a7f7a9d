#include "vndn/experiment/runner.hpp"

#include "vndn/apps/beacon-app.hpp"
#include "vndn/apps/tms-apps.hpp"
#include "vndn/mobility/fcd-trace.hpp"
#include "vndn/sim/node-pool.hpp"
#include "vndn/sim/random.hpp"

#include <cmath>
#include <memory>
#include <numeric>

namespace vndn::experiment {

namespace {

mobility::RoadGraph
buildGraph(const MapSpec& map)
{
  switch (map.kind) {
  case MapSpec::Kind::Grid:
    return mobility::generateGrid(map.rows, map.cols, map.block, mobility::URBAN_SPEED_LIMIT, map.lanes);
  case MapSpec::Kind::Highway:
    return mobility::generateHighway(map.length, map.lanes);
  case MapSpec::Kind::File:
    return mobility::RoadGraph::load(map.path);
  case MapSpec::Kind::Fcd:
    return map.network.empty() ? mobility::RoadGraph{} : mobility::RoadGraph::load(map.network);
  }
  return {};
}

struct Mobility
{
  std::unique_ptr<mobility::Mobility> model;
  size_t peakVehicles = 0;
};

Mobility
buildMobility(const ScenarioConfig& config)
{
  mobility::RoadGraph graph;
  try {
    graph = buildGraph(config.map);
  }
  catch (const std::exception& e) {
    throw ConfigError("map", e.what());
  }

  if (config.map.kind == MapSpec::Kind::Fcd) {
    mobility::FcdTrace trace;
    try {
      trace = mobility::FcdTrace::load(config.map.path);
    }
    catch (const std::exception& e) {
      throw ConfigError("map.path", e.what());
    }
    size_t peak = 0;
    for (const auto& ts : trace.timesteps)
      peak = std::max(peak, ts.vehicles.size());
    if (!config.incidents.empty())
      throw ConfigError("incidents", "a recorded trace cannot react to incidents");
    return {std::make_unique<mobility::ReplayWorld>(std::move(trace), std::move(graph),
                                                    config.tms.config.window),
            peak};
  }

  mobility::WorldConfig wc;
  wc.densityPerKm2 = config.densityPerKm2;
  wc.emergencyRatio = config.emergencyRatio;
  wc.statsWindow = config.tms.config.window;
  auto world = std::make_unique<mobility::World>(std::move(graph), wc,
                                                 sim::streamSeed(config.seed, sim::Stream::Mobility));
  for (size_t i = 0; i < config.incidents.size(); ++i) {
    try {
      world->addIncident(config.incidents[i]);
    }
    catch (const std::exception& e) {
      throw ConfigError("incidents[" + std::to_string(i) + "]", e.what());
    }
  }
  size_t peak = world->targetVehicleCount();
  return {std::move(world), peak};
}

} // namespace

double
sampleStdDev(const std::vector<double>& values)
{
  if (values.size() < 2)
    return 0;
  double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double ss = 0;
  for (double v : values)
    ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

MetricsReport
runScenario(const ScenarioConfig& config, fw::PacketTrace* trace)
{
  auto [model, peak] = buildMobility(config);
  mobility::Mobility& world = *model;
  const auto& graph = world.graph();
  bool replay = config.map.kind == MapSpec::Kind::Fcd;

  std::vector<sim::Position> rsuPositions = config.rsuPositions;
  if (rsuPositions.empty())
    rsuPositions = defaultRsuPositions(graph.bounds(), config.nRsus);

  sim::Scheduler scheduler;
  sim::Medium medium(scheduler, config.radio, sim::streamSeed(config.seed, sim::Stream::Medium));
  MetricsReport report;
  medium.setDropObserver([&] (NodeId, const sim::Frame&, sim::Medium::DropReason reason) {
    if (reason == sim::Medium::DropReason::Lost)
      ++report.framesLost;
    else if (reason == sim::Medium::DropReason::Collided)
      ++report.framesCollided;
  });

  fw::ForwarderConfig fc;
  fc.strategy = config.strategy.strategy;
  fc.csCapacity = config.cacheCapacity;
  fc.maxJitter = config.maxJitter;

  size_t capacity = static_cast<size_t>(std::ceil(static_cast<double>(peak) * 1.2)) +
                    static_cast<size_t>(config.nRsus) + 1;
  sim::NodePool pool(scheduler, medium, capacity, fc, config.seed, trace);

  bool tms = config.strategy.enabled && config.tms.enabled;
  apps::TmsConfig tmsConfig = config.tms.config;
  if (replay)
    tmsConfig.rerouting = false;
  apps::AppMetrics& appMetrics = report.apps;
  uint64_t appSeed = sim::streamSeed(config.seed, sim::Stream::Apps);
  uint64_t activations = 0;

  for (int k = 0; k < config.nRsus; ++k) {
    sim::Position where = rsuPositions[static_cast<size_t>(k)];
    auto monitored = config.tms.monitoredEdges
                       ? *config.tms.monitoredEdges
                       : apps::edgesWithinRange(graph, where, config.radio.range);
    pool.activate("rsu" + std::to_string(k), where, [&] (sim::Node& node) {
      if (tms)
        node.installApp<apps::TmsProducer>(node, world, monitored, tmsConfig, &appMetrics);
    });
  }

  auto installVehicle = [&] (const std::string& id) {
    const mobility::Vehicle* v = world.findVehicle(id);
    uint64_t n = activations++;
    pool.activate(id, v->position, [&] (sim::Node& node) {
      auto& fw = node.forwarder();
      fw.addRoute(ndn::beaconPrefix(), fw.wirelessFace().id);
      if (tms)
        fw.addRoute(ndn::trafficPrefix(), fw.wirelessFace().id);
      if (config.beacon.enabled)
        node.installApp<apps::BeaconApp>(node, world, id, config.beacon.config,
                                         sim::mixSeed(appSeed, 2 * n), &appMetrics);
      if (tms)
        node.installApp<apps::TmsConsumer>(node, world, id, tmsConfig,
                                           sim::mixSeed(appSeed, 2 * n + 1), &appMetrics);
    });
  };

  Time end = fromSeconds(config.durationS);
  std::function<void()> stepMobility = [&] {
    auto events = world.step(config.step);
    for (const auto& id : events.arrived)
      pool.deactivate(id);
    for (const auto& id : events.spawned)
      installVehicle(id);
    for (const mobility::Vehicle* v : world.activeVehicles()) {
      if (sim::Node* node = pool.findByVehicle(v->id))
        node->setPosition(v->position);
    }
    if (scheduler.now() + config.step <= end)
      scheduler.schedule(config.step, stepMobility);
  };
  if (config.step <= end)
    scheduler.schedule(config.step, stepMobility);
  scheduler.runUntil(end);

  fw::Counters counters = pool.totalCounters();
  report.interestsSent = counters.interestsSent;
  report.dataSent = counters.dataSent;
  report.nacksSent = counters.nacksSent;
  report.totalPackets = counters.totalSent();
  report.csHits = counters.csHits;
  report.dropsScope = counters.dropsScope;
  report.dropsDuplicate = counters.dropsDuplicate;
  report.dropsUnsolicited = counters.dropsUnsolicited;
  for (const auto& node : pool.nodes())
    report.malformedFrames += node->malformedFrames();

  if (appMetrics.trafficInterests > 0)
    report.satisfactionRatio = static_cast<double>(appMetrics.trafficData) /
                               static_cast<double>(appMetrics.trafficInterests);

  report.vehiclesSpawned = world.spawnedCount();
  for (const auto& trip : world.completedTrips())
    report.travelTimesS.push_back(trip.travelTimeSeconds());
  report.completedTrips = report.travelTimesS.size();
  if (!report.travelTimesS.empty())
    report.meanTravelTimeS = std::accumulate(report.travelTimesS.begin(), report.travelTimesS.end(), 0.0) /
                             static_cast<double>(report.travelTimesS.size());
  report.stdTravelTimeS = sampleStdDev(report.travelTimesS);
  report.reroutes = appMetrics.reroutes;
  report.eventsExecuted = scheduler.executedCount();
  report.executionDigest = scheduler.executionDigest();
  return report;
}

} // namespace vndn::experiment
