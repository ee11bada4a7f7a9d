#include "vndn/experiment/scenario.hpp"

#include <cmath>
#include <fstream>

namespace vndn::experiment {

using nlohmann::json;

namespace {

/// Strict view of one JSON object: every key must be consumed, types are checked.
class ObjectReader
{
public:
  ObjectReader(const json& doc, std::string path)
    : m_doc(doc)
    , m_path(std::move(path))
  {
    if (!doc.is_object())
      throw ConfigError(m_path.empty() ? "$" : m_path, "expected an object");
  }

  ~ObjectReader() = default;

  std::string
  sub(const std::string& key) const
  {
    return m_path.empty() ? key : m_path + "." + key;
  }

  const json*
  get(const std::string& key)
  {
    m_seen.insert(key);
    auto it = m_doc.find(key);
    return it == m_doc.end() ? nullptr : &*it;
  }

  const json&
  require(const std::string& key)
  {
    const json* v = get(key);
    if (v == nullptr)
      throw ConfigError(sub(key), "required field is missing");
    return *v;
  }

  double
  number(const std::string& key, std::optional<double> fallback = std::nullopt)
  {
    const json* v = fallback ? get(key) : &require(key);
    if (v == nullptr)
      return *fallback;
    if (!v->is_number())
      throw ConfigError(sub(key), "expected a number");
    double d = v->get<double>();
    if (!std::isfinite(d))
      throw ConfigError(sub(key), "expected a finite number");
    return d;
  }

  uint64_t
  unsignedInt(const std::string& key, std::optional<uint64_t> fallback = std::nullopt)
  {
    const json* v = fallback ? get(key) : &require(key);
    if (v == nullptr)
      return *fallback;
    if (!v->is_number_integer() || (!v->is_number_unsigned() && v->get<int64_t>() < 0))
      throw ConfigError(sub(key), "expected a non-negative integer");
    return v->get<uint64_t>();
  }

  bool
  boolean(const std::string& key, bool fallback)
  {
    const json* v = get(key);
    if (v == nullptr)
      return fallback;
    if (!v->is_boolean())
      throw ConfigError(sub(key), "expected true or false");
    return v->get<bool>();
  }

  std::string
  string(const std::string& key, std::optional<std::string> fallback = std::nullopt)
  {
    const json* v = fallback ? get(key) : &require(key);
    if (v == nullptr)
      return *fallback;
    if (!v->is_string())
      throw ConfigError(sub(key), "expected a string");
    return v->get<std::string>();
  }

  Duration
  millis(const std::string& key, Duration fallback)
  {
    double ms = number(key, toMilliseconds(fallback));
    if (ms <= 0)
      throw ConfigError(sub(key), "must be positive");
    return fromMilliseconds(ms);
  }

  /// Call once all known keys were read.
  void
  finish() const
  {
    for (const auto& [key, _] : m_doc.items()) {
      if (m_seen.count(key) == 0)
        throw ConfigError(sub(key), "unknown field");
    }
  }

private:
  const json& m_doc;
  std::string m_path;
  std::set<std::string> m_seen;
};

std::filesystem::path
resolve(const std::filesystem::path& base, const std::string& p)
{
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

MapSpec
parseMap(const json& doc, const std::filesystem::path& baseDir)
{
  ObjectReader r(doc, "map");
  MapSpec m;
  std::string type = r.string("type");
  if (type == "grid") {
    m.kind = MapSpec::Kind::Grid;
    m.rows = static_cast<int>(r.unsignedInt("rows", 3));
    m.cols = static_cast<int>(r.unsignedInt("cols", 3));
    m.block = r.number("block", 100.0);
    m.lanes = static_cast<int>(r.unsignedInt("lanes", 1));
    if (m.rows < 1 || m.cols < 1)
      throw ConfigError("map.rows", "grid needs at least one row and column");
    if (m.block <= 0)
      throw ConfigError("map.block", "must be positive");
    if (m.lanes < 1)
      throw ConfigError("map.lanes", "must be at least 1");
  }
  else if (type == "highway") {
    m.kind = MapSpec::Kind::Highway;
    m.length = r.number("length", 2000.0);
    m.lanes = static_cast<int>(r.unsignedInt("lanes", 3));
    if (m.length <= 0)
      throw ConfigError("map.length", "must be positive");
    if (m.lanes < 1)
      throw ConfigError("map.lanes", "must be at least 1");
  }
  else if (type == "file") {
    m.kind = MapSpec::Kind::File;
    m.path = resolve(baseDir, r.string("path"));
  }
  else if (type == "fcd") {
    m.kind = MapSpec::Kind::Fcd;
    m.path = resolve(baseDir, r.string("path"));
    std::string network = r.string("network", "");
    if (!network.empty())
      m.network = resolve(baseDir, network);
  }
  else {
    throw ConfigError("map.type", "expected grid, highway, file or fcd, got '" + type + "'");
  }
  r.finish();
  return m;
}

sim::MediumConfig
parseRadio(const json& doc)
{
  ObjectReader r(doc, "radio");
  sim::MediumConfig c;
  c.range = r.number("range_m", c.range);
  c.dataRate = r.number("data_rate_bps", c.dataRate);
  c.overhead = fromMilliseconds(r.number("overhead_us", 100.0) / 1000.0);
  c.lossProbability = r.number("loss_probability", c.lossProbability);
  c.mtu = r.unsignedInt("mtu", c.mtu);
  std::string collisions = r.string("collisions", "none");
  if (collisions == "none")
    c.collisions = sim::CollisionModel::None;
  else if (collisions == "slot")
    c.collisions = sim::CollisionModel::Slot;
  else
    throw ConfigError("radio.collisions", "expected none or slot");
  if (c.range <= 0)
    throw ConfigError("radio.range_m", "must be positive");
  if (c.dataRate <= 0)
    throw ConfigError("radio.data_rate_bps", "must be positive");
  if (c.overhead < Duration::zero())
    throw ConfigError("radio.overhead_us", "must be non-negative");
  if (c.lossProbability < 0 || c.lossProbability > 1)
    throw ConfigError("radio.loss_probability", "must lie in [0, 1]");
  if (c.mtu == 0)
    throw ConfigError("radio.mtu", "must be positive");
  r.finish();
  return c;
}

void
parseApps(const json& doc, ScenarioConfig& cfg)
{
  ObjectReader r(doc, "apps");
  if (const json* b = r.get("beacon")) {
    ObjectReader br(*b, "apps.beacon");
    cfg.beacon.enabled = br.boolean("enabled", true);
    cfg.beacon.config.interval = br.millis("interval_ms", cfg.beacon.config.interval);
    br.finish();
  }
  if (const json* t = r.get("tms")) {
    ObjectReader tr(*t, "apps.tms");
    auto& c = cfg.tms.config;
    cfg.tms.enabled = tr.boolean("enabled", true);
    c.queryInterval = tr.millis("query_interval_ms", c.queryInterval);
    c.congestionSpeedRatio = tr.number("congestion_speed_ratio", c.congestionSpeedRatio);
    c.congestionOccupancy = tr.number("congestion_occupancy", c.congestionOccupancy);
    c.improvementMargin = tr.number("improvement_margin", c.improvementMargin);
    c.window = tr.millis("window_ms", c.window);
    c.interestLifetime = tr.millis("interest_lifetime_ms", c.interestLifetime);
    c.rerouting = tr.boolean("rerouting", c.rerouting);
    if (const json* m = tr.get("monitored_edges")) {
      if (!m->is_array())
        throw ConfigError("apps.tms.monitored_edges", "expected an array of edge ids");
      std::set<std::string> edges;
      for (size_t i = 0; i < m->size(); ++i) {
        if (!(*m)[i].is_string())
          throw ConfigError("apps.tms.monitored_edges[" + std::to_string(i) + "]", "expected a string");
        edges.insert((*m)[i].get<std::string>());
      }
      cfg.tms.monitoredEdges = std::move(edges);
    }
    tr.finish();
    try {
      c.validate();
    }
    catch (const std::invalid_argument& e) {
      throw ConfigError("apps.tms", e.what());
    }
  }
  r.finish();
}

} // namespace

std::string
StrategyChoice::name() const
{
  return enabled ? std::string(fw::toString(strategy)) : "none";
}

StrategyChoice
StrategyChoice::parse(std::string_view text)
{
  if (text == "none")
    return {false, fw::Strategy::Multicast};
  return {true, fw::parseStrategy(text)};
}

std::vector<sim::Position>
defaultRsuPositions(const mobility::Bounds& bounds, int n)
{
  std::vector<sim::Position> out;
  for (int k = 0; k < n; ++k) {
    double f = static_cast<double>(k + 1) / (n + 1);
    out.push_back({bounds.minX + f * (bounds.maxX - bounds.minX),
                   bounds.minY + f * (bounds.maxY - bounds.minY)});
  }
  return out;
}

ScenarioConfig
ScenarioConfig::fromJson(const json& doc, const std::filesystem::path& baseDir)
{
  ObjectReader r(doc, "");
  ScenarioConfig cfg;

  cfg.seed = r.unsignedInt("seed");
  cfg.durationS = r.number("duration_s");
  if (cfg.durationS < 0)
    throw ConfigError("duration_s", "must be non-negative");
  cfg.step = r.millis("step_ms", cfg.step);
  cfg.map = parseMap(r.require("map"), baseDir);
  cfg.densityPerKm2 = r.number("density_per_km2");
  if (cfg.densityPerKm2 < 0)
    throw ConfigError("density_per_km2", "must be non-negative");
  cfg.emergencyRatio = r.number("emergency_ratio", 0.0);
  if (cfg.emergencyRatio < 0 || cfg.emergencyRatio > 1)
    throw ConfigError("emergency_ratio", "must lie in [0, 1]");
  cfg.nRsus = static_cast<int>(r.unsignedInt("n_rsus"));
  cfg.cacheCapacity = r.unsignedInt("cache_capacity");

  try {
    cfg.strategy = StrategyChoice::parse(r.string("strategy"));
  }
  catch (const std::invalid_argument& e) {
    throw ConfigError("strategy", e.what());
  }

  if (const json* p = r.get("rsu_positions")) {
    if (!p->is_array())
      throw ConfigError("rsu_positions", "expected an array of [x, y] pairs");
    for (size_t i = 0; i < p->size(); ++i) {
      const json& xy = (*p)[i];
      if (!xy.is_array() || xy.size() != 2 || !xy[0].is_number() || !xy[1].is_number())
        throw ConfigError("rsu_positions[" + std::to_string(i) + "]", "expected [x, y]");
      cfg.rsuPositions.push_back({xy[0].get<double>(), xy[1].get<double>()});
    }
    if (cfg.rsuPositions.size() != static_cast<size_t>(cfg.nRsus))
      throw ConfigError("rsu_positions", "must list exactly n_rsus positions");
  }

  if (const json* radio = r.get("radio"))
    cfg.radio = parseRadio(*radio);
  if (const json* fwd = r.get("forwarder")) {
    ObjectReader fr(*fwd, "forwarder");
    cfg.maxJitter = fromMilliseconds(fr.number("max_jitter_ms", 10.0));
    if (cfg.maxJitter < Duration::zero())
      throw ConfigError("forwarder.max_jitter_ms", "must be non-negative");
    fr.finish();
  }
  if (const json* a = r.get("apps"))
    parseApps(*a, cfg);

  if (const json* inc = r.get("incidents")) {
    if (!inc->is_array())
      throw ConfigError("incidents", "expected an array");
    for (size_t i = 0; i < inc->size(); ++i) {
      std::string path = "incidents[" + std::to_string(i) + "]";
      ObjectReader ir((*inc)[i], path);
      mobility::Incident incident;
      incident.edgeId = ir.string("edge");
      incident.start = fromSeconds(ir.number("start_s", 120.0));
      incident.end = fromSeconds(ir.number("end_s", 480.0));
      incident.speedFactor = ir.number("speed_factor", 0.1);
      ir.finish();
      if (!(incident.start < incident.end))
        throw ConfigError(path, "start_s must be before end_s");
      if (!(incident.speedFactor > 0 && incident.speedFactor <= 1))
        throw ConfigError(path + ".speed_factor", "must lie in (0, 1]");
      cfg.incidents.push_back(std::move(incident));
    }
  }
  r.finish();
  return cfg;
}

json
readJsonFile(const std::filesystem::path& file)
{
  std::ifstream is(file);
  if (!is)
    throw ConfigError(file.string(), "cannot open file");
  json doc = json::parse(is, nullptr, false);
  if (doc.is_discarded())
    throw ConfigError(file.string(), "not valid JSON");
  return doc;
}

ScenarioConfig
ScenarioConfig::load(const std::filesystem::path& file)
{
  return fromJson(readJsonFile(file), file.parent_path());
}

} // namespace vndn::experiment
