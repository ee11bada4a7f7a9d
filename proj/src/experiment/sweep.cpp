#include "vndn/experiment/sweep.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace vndn::experiment {

using nlohmann::json;

const std::vector<std::string> CSV_COLUMNS = {
  "run_id", "seed", "strategy", "density", "n_rsus", "cache_size", "interests_sent", "data_sent",
  "nacks_sent", "total_packets", "cs_hits", "satisfaction_ratio", "completed_trips",
  "mean_travel_time_s", "std_travel_time_s", "reroutes",
};

ResultRow
ResultRow::from(uint64_t runId, const ScenarioConfig& config, const MetricsReport& report)
{
  ResultRow r;
  r.runId = runId;
  r.seed = config.seed;
  r.strategy = config.strategy.name();
  r.density = config.densityPerKm2;
  r.nRsus = config.nRsus;
  r.cacheSize = config.cacheCapacity;
  r.interestsSent = report.interestsSent;
  r.dataSent = report.dataSent;
  r.nacksSent = report.nacksSent;
  r.totalPackets = report.totalPackets;
  r.csHits = report.csHits;
  r.satisfactionRatio = report.satisfactionRatio;
  r.completedTrips = report.completedTrips;
  r.meanTravelTimeS = report.meanTravelTimeS;
  r.stdTravelTimeS = report.stdTravelTimeS;
  r.reroutes = report.reroutes;
  return r;
}

std::string
formatNumber(double value)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string
columnValue(const ResultRow& row, const std::string& column)
{
  auto u = [] (uint64_t v) { return std::to_string(v); };
  if (column == "run_id") return u(row.runId);
  if (column == "seed") return u(row.seed);
  if (column == "strategy") return row.strategy;
  if (column == "density") return formatNumber(row.density);
  if (column == "n_rsus") return std::to_string(row.nRsus);
  if (column == "cache_size") return u(row.cacheSize);
  if (column == "interests_sent") return u(row.interestsSent);
  if (column == "data_sent") return u(row.dataSent);
  if (column == "nacks_sent") return u(row.nacksSent);
  if (column == "total_packets") return u(row.totalPackets);
  if (column == "cs_hits") return u(row.csHits);
  if (column == "satisfaction_ratio") return formatNumber(row.satisfactionRatio);
  if (column == "completed_trips") return u(row.completedTrips);
  if (column == "mean_travel_time_s") return formatNumber(row.meanTravelTimeS);
  if (column == "std_travel_time_s") return formatNumber(row.stdTravelTimeS);
  if (column == "reroutes") return u(row.reroutes);
  throw std::invalid_argument("unknown column '" + column + "'");
}

void
writeCsv(std::ostream& os, const std::vector<ResultRow>& rows)
{
  for (size_t i = 0; i < CSV_COLUMNS.size(); ++i)
    os << (i ? "," : "") << CSV_COLUMNS[i];
  os << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < CSV_COLUMNS.size(); ++i)
      os << (i ? "," : "") << columnValue(row, CSV_COLUMNS[i]);
    os << '\n';
  }
}

namespace {

template<typename T>
T
parseField(const std::string& text, size_t line, const std::string& column)
{
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::runtime_error("line " + std::to_string(line) + ": bad value '" + text + "' for " + column);
  return value;
}

std::vector<std::string>
splitCsvLine(const std::string& line)
{
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ','))
    out.push_back(field);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

} // namespace

std::vector<ResultRow>
readCsv(std::istream& is)
{
  std::string line;
  if (!std::getline(is, line) || splitCsvLine(line) != CSV_COLUMNS)
    throw std::runtime_error("line 1: unexpected CSV header");

  std::vector<ResultRow> rows;
  size_t lineNo = 1;
  while (std::getline(is, line)) {
    ++lineNo;
    if (line.empty())
      continue;
    auto f = splitCsvLine(line);
    if (f.size() != CSV_COLUMNS.size())
      throw std::runtime_error("line " + std::to_string(lineNo) + ": expected " +
                               std::to_string(CSV_COLUMNS.size()) + " fields");
    ResultRow r;
    size_t i = 0;
    auto next = [&] { return f[i++]; };
    auto u = [&] { auto s = next(); return parseField<uint64_t>(s, lineNo, CSV_COLUMNS[i - 1]); };
    auto d = [&] { auto s = next(); return parseField<double>(s, lineNo, CSV_COLUMNS[i - 1]); };
    r.runId = u();
    r.seed = u();
    r.strategy = next();
    r.density = d();
    r.nRsus = static_cast<int>(u());
    r.cacheSize = u();
    r.interestsSent = u();
    r.dataSent = u();
    r.nacksSent = u();
    r.totalPackets = u();
    r.csHits = u();
    r.satisfactionRatio = d();
    r.completedTrips = u();
    r.meanTravelTimeS = d();
    r.stdTravelTimeS = d();
    r.reroutes = u();
    rows.push_back(std::move(r));
  }
  return rows;
}

size_t
FactorialPlan::runCount() const
{
  size_t n = replications;
  for (const auto& [_, levels] : factors)
    n *= levels.size();
  return n;
}

ScenarioConfig
FactorialPlan::scenario(size_t index) const
{
  if (index >= runCount())
    throw std::out_of_range("run index beyond the plan");

  json doc = base;
  size_t combo = index / replications;
  // last factor (by name) varies fastest
  std::vector<std::pair<std::string, const json*>> chosen;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const auto& levels = it->second;
    chosen.emplace_back(it->first, &levels[combo % levels.size()]);
    combo /= levels.size();
  }
  for (const auto& [path, value] : chosen) {
    std::string pointer = "/" + path;
    std::replace(pointer.begin(), pointer.end(), '.', '/');
    doc[json::json_pointer(pointer)] = *value;
  }
  doc["seed"] = seedBase + index;
  return ScenarioConfig::fromJson(doc, baseDir);
}

FactorialPlan
FactorialPlan::fromJson(const json& doc, const std::filesystem::path& baseDir)
{
  if (!doc.is_object())
    throw ConfigError("$", "expected an object");
  FactorialPlan plan;
  plan.baseDir = baseDir;

  for (const auto& [key, _] : doc.items()) {
    if (key != "base" && key != "factors" && key != "replications" && key != "seed_base")
      throw ConfigError(key, "unknown field");
  }

  auto base = doc.find("base");
  if (base == doc.end())
    throw ConfigError("base", "required field is missing");
  if (base->is_string()) {
    auto file = std::filesystem::path(base->get<std::string>());
    if (file.is_relative() && !baseDir.empty())
      file = baseDir / file;
    plan.base = readJsonFile(file);
    plan.baseDir = file.parent_path();
  }
  else if (base->is_object()) {
    plan.base = *base;
  }
  else {
    throw ConfigError("base", "expected a scenario object or a file name");
  }
  if (!plan.base.contains("seed"))
    plan.base["seed"] = 0;

  auto factors = doc.find("factors");
  if (factors == doc.end() || !factors->is_object())
    throw ConfigError("factors", "expected an object of level lists");
  for (const auto& [name, levels] : factors->items()) {
    if (!levels.is_array() || levels.empty())
      throw ConfigError("factors." + name, "expected a non-empty list of levels");
    if (name == "seed")
      throw ConfigError("factors.seed", "seeds come from seed_base");
    plan.factors[name] = std::vector<json>(levels.begin(), levels.end());
  }

  auto reps = doc.find("replications");
  if (reps != doc.end()) {
    if (!reps->is_number_unsigned() || reps->get<uint64_t>() == 0)
      throw ConfigError("replications", "expected a positive integer");
    plan.replications = reps->get<uint64_t>();
  }
  auto seedBase = doc.find("seed_base");
  if (seedBase != doc.end()) {
    if (!seedBase->is_number_unsigned())
      throw ConfigError("seed_base", "expected a non-negative integer");
    plan.seedBase = seedBase->get<uint64_t>();
  }
  return plan;
}

FactorialPlan
FactorialPlan::load(const std::filesystem::path& file)
{
  return fromJson(readJsonFile(file), file.parent_path());
}

std::vector<ResultRow>
runFactorial(const FactorialPlan& plan, unsigned jobs)
{
  size_t n = plan.runCount();
  std::vector<ScenarioConfig> scenarios;
  scenarios.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    try {
      scenarios.push_back(plan.scenario(i));
    }
    catch (const ConfigError& e) {
      throw ConfigError("run " + std::to_string(i) + " (seed " + std::to_string(plan.seedBase + i) +
                          ") " + e.path(),
                        e.what());
    }
  }

  std::vector<std::optional<ResultRow>> rows(n);
  std::vector<std::optional<std::string>> errors(n);
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    while (!failed) {
      size_t i = next++;
      if (i >= n)
        return;
      try {
        rows[i] = ResultRow::from(i, scenarios[i], runScenario(scenarios[i]));
      }
      catch (const std::exception& e) {
        errors[i] = e.what();
        failed = true;
      }
    }
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<size_t>(n, 1))));
  if (jobs == 1) {
    worker();
  }
  else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back(worker);
    for (auto& t : pool)
      t.join();
  }

  std::vector<ResultRow> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (errors[i])
      throw RunFailed(scenarios[i].seed, *errors[i]);
    if (rows[i])
      out.push_back(std::move(*rows[i]));
  }
  return out;
}

ConfidenceInterval
meanCi95(const std::vector<double>& values)
{
  if (values.size() < 2)
    throw InsufficientReplicates("a confidence interval needs at least 2 values, got " +
                                 std::to_string(values.size()));
  ConfidenceInterval ci;
  ci.n = values.size();
  double n = static_cast<double>(ci.n);
  ci.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0;
  for (double v : values)
    ss += (v - ci.mean) * (v - ci.mean);
  double s = std::sqrt(ss / (n - 1));
  boost::math::students_t_distribution<double> t(n - 1);
  ci.halfWidth = boost::math::quantile(t, 0.975) * s / std::sqrt(n);
  return ci;
}

std::map<std::vector<std::string>, ConfidenceInterval>
aggregate(const std::vector<ResultRow>& rows, const std::vector<std::string>& groupBy,
          const std::string& metric)
{
  std::map<std::vector<std::string>, std::vector<double>> groups;
  for (const auto& row : rows) {
    std::vector<std::string> key;
    for (const auto& column : groupBy)
      key.push_back(columnValue(row, column));
    groups[key].push_back(parseField<double>(columnValue(row, metric), 0, metric));
  }
  std::map<std::vector<std::string>, ConfidenceInterval> out;
  for (const auto& [key, values] : groups)
    out.emplace(key, meanCi95(values));
  return out;
}

} // namespace vndn::experiment
