#ifndef VNDN_EXPERIMENT_RUNNER_HPP
#define VNDN_EXPERIMENT_RUNNER_HPP

#include "vndn/apps/app-metrics.hpp"
#include "vndn/experiment/scenario.hpp"
#include "vndn/fw/packet-trace.hpp"

namespace vndn::experiment {

struct MetricsReport
{
  uint64_t interestsSent = 0;
  uint64_t dataSent = 0;
  uint64_t nacksSent = 0;
  uint64_t totalPackets = 0;
  uint64_t csHits = 0;

  uint64_t dropsScope = 0;
  uint64_t dropsDuplicate = 0;
  uint64_t dropsUnsolicited = 0;
  uint64_t framesLost = 0;
  uint64_t framesCollided = 0;
  uint64_t malformedFrames = 0;

  /// Traffic-service Interests answered with Data over those expressed; 0 when none were.
  double satisfactionRatio = 0;

  uint64_t vehiclesSpawned = 0;
  uint64_t completedTrips = 0;
  std::vector<double> travelTimesS;
  double meanTravelTimeS = 0;
  double stdTravelTimeS = 0;
  uint64_t reroutes = 0;

  apps::AppMetrics apps;
  uint64_t eventsExecuted = 0;
  uint64_t executionDigest = 0;

  friend bool
  operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Whole-run driver: road traffic, node pool, RSUs, apps. Deterministic per config.
/// \param trace  if not null, receives every packet event of the run
/// \throw ConfigError for problems only detectable once the map is loaded
MetricsReport
runScenario(const ScenarioConfig& config, fw::PacketTrace* trace = nullptr);

/// Sample standard deviation (n - 1), 0 for fewer than two values.
double
sampleStdDev(const std::vector<double>& values);

} // namespace vndn::experiment

#endif // VNDN_EXPERIMENT_RUNNER_HPP
