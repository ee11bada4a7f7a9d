#ifndef VNDN_APPS_APP_METRICS_HPP
#define VNDN_APPS_APP_METRICS_HPP

#include <cstdint>

namespace vndn::apps {

/// Run-wide application tallies. Apps come and go with their vehicles, the totals stay.
struct AppMetrics
{
  uint64_t beaconsSent = 0;
  uint64_t beaconsReceived = 0;
  uint64_t malformedBeacons = 0;
  uint64_t laneYields = 0;

  uint64_t trafficInterests = 0;
  uint64_t trafficData = 0;
  uint64_t trafficNacks = 0;
  uint64_t trafficTimeouts = 0;
  uint64_t malformedPayloads = 0;
  uint64_t reroutes = 0;

  uint64_t producerReplies = 0;
  uint64_t producerSilent = 0;

  friend bool
  operator==(const AppMetrics&, const AppMetrics&) = default;
};

} // namespace vndn::apps

#endif // VNDN_APPS_APP_METRICS_HPP
