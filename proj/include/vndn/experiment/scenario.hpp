#ifndef VNDN_EXPERIMENT_SCENARIO_HPP
#define VNDN_EXPERIMENT_SCENARIO_HPP

#include "vndn/apps/beacon-app.hpp"
#include "vndn/apps/tms.hpp"
#include "vndn/fw/forwarder.hpp"
#include "vndn/mobility/world.hpp"
#include "vndn/sim/medium.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace vndn::experiment {

/// Invalid scenario or plan; the message starts with the JSON path of the offending field.
class ConfigError : public std::invalid_argument
{
public:
  ConfigError(const std::string& path, const std::string& message)
    : std::invalid_argument(path + ": " + message)
    , m_path(path)
  {
  }

  const std::string&
  path() const noexcept
  {
    return m_path;
  }

private:
  std::string m_path;
};

struct MapSpec
{
  enum class Kind {
    Grid,
    Highway,
    File,
    Fcd,
  };

  Kind kind = Kind::Grid;
  int rows = 3;
  int cols = 3;
  double block = 100;
  double length = 2000;
  int lanes = 1; ///< JSON default: 1 on a grid, 3 on a highway
  std::filesystem::path path;    ///< road network (File) or trace (Fcd)
  std::filesystem::path network; ///< optional road network for an Fcd trace
};

/// Factor level "none": no traffic service at all, the baseline for travel times.
struct StrategyChoice
{
  bool enabled = true;
  fw::Strategy strategy = fw::Strategy::Multicast;

  std::string
  name() const;

  static StrategyChoice
  parse(std::string_view text);
};

struct BeaconSettings
{
  bool enabled = true;
  apps::BeaconConfig config;
};

struct TmsSettings
{
  bool enabled = true;
  apps::TmsConfig config;
  /// Overrides the in-range monitored set of every RSU.
  std::optional<std::set<std::string>> monitoredEdges;
};

struct ScenarioConfig
{
  uint64_t seed = 0;
  double durationS = 600;
  Duration step = std::chrono::milliseconds(100);
  MapSpec map;
  double densityPerKm2 = 0;
  double emergencyRatio = 0;
  int nRsus = 1;
  std::vector<sim::Position> rsuPositions; ///< empty: spread along the map diagonal
  size_t cacheCapacity = 1000;
  StrategyChoice strategy;
  sim::MediumConfig radio;
  Duration maxJitter = std::chrono::milliseconds(10);
  BeaconSettings beacon;
  TmsSettings tms;
  std::vector<mobility::Incident> incidents;

  /// \p baseDir resolves relative file paths.
  /// \throw ConfigError
  static ScenarioConfig
  fromJson(const nlohmann::json& doc, const std::filesystem::path& baseDir = {});

  static ScenarioConfig
  load(const std::filesystem::path& file);
};

/// Reads and parses a JSON file. \throw ConfigError with path "<file>"
nlohmann::json
readJsonFile(const std::filesystem::path& file);

/// RSU k of n sits at fraction (k + 1) / (n + 1) of the bounding-box diagonal.
std::vector<sim::Position>
defaultRsuPositions(const mobility::Bounds& bounds, int n);

} // namespace vndn::experiment

#endif // VNDN_EXPERIMENT_SCENARIO_HPP
