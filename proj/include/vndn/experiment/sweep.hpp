#ifndef VNDN_EXPERIMENT_SWEEP_HPP
#define VNDN_EXPERIMENT_SWEEP_HPP

#include "vndn/experiment/runner.hpp"

#include <iosfwd>
#include <map>
#include <stdexcept>

namespace vndn::experiment {

/// One CSV row: the run's identity, its factor levels and the report scalars.
struct ResultRow
{
  uint64_t runId = 0;
  uint64_t seed = 0;
  std::string strategy;
  double density = 0;
  int nRsus = 0;
  uint64_t cacheSize = 0;
  uint64_t interestsSent = 0;
  uint64_t dataSent = 0;
  uint64_t nacksSent = 0;
  uint64_t totalPackets = 0;
  uint64_t csHits = 0;
  double satisfactionRatio = 0;
  uint64_t completedTrips = 0;
  double meanTravelTimeS = 0;
  double stdTravelTimeS = 0;
  uint64_t reroutes = 0;

  static ResultRow
  from(uint64_t runId, const ScenarioConfig& config, const MetricsReport& report);

  friend bool
  operator==(const ResultRow&, const ResultRow&) = default;
};

extern const std::vector<std::string> CSV_COLUMNS;

/// Shortest text that reads back to the same double.
std::string
formatNumber(double value);

void
writeCsv(std::ostream& os, const std::vector<ResultRow>& rows);

/// \throw std::runtime_error on a wrong header or malformed field, naming the line
std::vector<ResultRow>
readCsv(std::istream& is);

/// Text of one CSV column of \p row, as written by writeCsv.
std::string
columnValue(const ResultRow& row, const std::string& column);

/** \brief Full factorial design over scenario fields.
 *
 *  Factor names are dotted field paths into the base scenario ("strategy", "radio.range_m").
 *  Runs are ordered by the level tuple with factors sorted by name, then by replication;
 *  run i uses seed seedBase + i.
 */
struct FactorialPlan
{
  nlohmann::json base;
  std::map<std::string, std::vector<nlohmann::json>> factors;
  uint64_t replications = 1;
  uint64_t seedBase = 0;
  std::filesystem::path baseDir;

  size_t
  runCount() const;

  /// Scenario for run \p index, already validated. \throw ConfigError
  ScenarioConfig
  scenario(size_t index) const;

  /// {"base": {...} | "<file>", "factors": {...}, "replications": R, "seed_base": S}
  static FactorialPlan
  fromJson(const nlohmann::json& doc, const std::filesystem::path& baseDir = {});

  static FactorialPlan
  load(const std::filesystem::path& file);
};

class RunFailed : public std::runtime_error
{
public:
  RunFailed(uint64_t seed, const std::string& what)
    : std::runtime_error("run with seed " + std::to_string(seed) + " failed: " + what)
    , m_seed(seed)
  {
  }

  uint64_t
  seed() const noexcept
  {
    return m_seed;
  }

private:
  uint64_t m_seed;
};

/// Runs every plan entry on up to \p jobs threads; rows come back in plan order.
/// \throw ConfigError before anything runs; RunFailed for the first failing run in plan order
std::vector<ResultRow>
runFactorial(const FactorialPlan& plan, unsigned jobs = 1);

class InsufficientReplicates : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct ConfidenceInterval
{
  double mean = 0;
  double halfWidth = 0;
  size_t n = 0;
};

/// Mean and t(n-1, 0.975) * s / sqrt(n). \throw InsufficientReplicates when n < 2
ConfidenceInterval
meanCi95(const std::vector<double>& values);

/// Groups rows by the text of the \p groupBy columns and summarizes \p metric per group.
std::map<std::vector<std::string>, ConfidenceInterval>
aggregate(const std::vector<ResultRow>& rows, const std::vector<std::string>& groupBy,
          const std::string& metric);

} // namespace vndn::experiment

#endif // VNDN_EXPERIMENT_SWEEP_HPP
