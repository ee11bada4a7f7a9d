#include "vndn/apps/tms.hpp"

#include "json.hpp"

#include <algorithm>

namespace vndn::apps {

void
TmsConfig::validate() const
{
  if (queryInterval <= Duration::zero())
    throw std::invalid_argument("query_interval_ms must be positive");
  if (!(congestionSpeedRatio > 0 && congestionSpeedRatio < 1))
    throw std::invalid_argument("congestion_speed_ratio must be in (0, 1)");
  if (!(congestionOccupancy > 0 && congestionOccupancy <= 1))
    throw std::invalid_argument("congestion_occupancy must be in (0, 1]");
  if (!(improvementMargin >= 0))
    throw std::invalid_argument("improvement_margin must be >= 0");
  if (window <= Duration::zero())
    throw std::invalid_argument("window_ms must be positive");
  if (interestLifetime <= Duration::zero())
    throw std::invalid_argument("interest_lifetime_ms must be positive");
}

std::string
encodeTrafficPayload(const mobility::TrafficWindowStats& stats)
{
  nlohmann::ordered_json doc;
  doc["road"] = stats.edgeId;
  doc["window"] = stats.window;
  doc["meanSpeed"] = stats.meanSpeed;
  doc["occupancy"] = stats.occupancy;
  doc["sampleCount"] = stats.sampleCount;
  return doc.dump();
}

mobility::TrafficWindowStats
decodeTrafficPayload(std::string_view payload)
{
  auto doc = nlohmann::json::parse(payload, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw MalformedPayload("traffic payload is not a JSON object");

  auto need = [&] (const char* key) -> const nlohmann::json& {
    auto it = doc.find(key);
    if (it == doc.end())
      throw MalformedPayload(std::string("traffic payload lacks '") + key + "'");
    return *it;
  };
  const auto& road = need("road");
  const auto& window = need("window");
  const auto& speed = need("meanSpeed");
  const auto& occupancy = need("occupancy");
  const auto& samples = need("sampleCount");
  if (!road.is_string() || !window.is_number_unsigned() || !speed.is_number() ||
      !occupancy.is_number() || !samples.is_number_unsigned())
    throw MalformedPayload("traffic payload has a field of the wrong type");

  mobility::TrafficWindowStats stats;
  stats.edgeId = road.get<std::string>();
  stats.window = window.get<uint64_t>();
  stats.meanSpeed = speed.get<double>();
  stats.occupancy = occupancy.get<double>();
  stats.sampleCount = samples.get<uint64_t>();
  if (stats.meanSpeed < 0 || stats.occupancy < 0 || stats.occupancy > 1)
    throw MalformedPayload("traffic payload value out of range");
  return stats;
}

void
TrafficView::update(const mobility::TrafficWindowStats& stats, Time now)
{
  m_entries.insert_or_assign(stats.edgeId, Entry{stats, now});
}

const TrafficView::Entry*
TrafficView::fresh(const std::string& edgeId, Time now) const
{
  auto it = m_entries.find(edgeId);
  if (it == m_entries.end() || now - it->second.receivedAt >= m_staleness)
    return nullptr;
  return &it->second;
}

bool
isCongested(const mobility::TrafficWindowStats& stats, const mobility::Edge& edge,
            const TmsConfig& config)
{
  return stats.meanSpeed < config.congestionSpeedRatio * edge.speedLimit ||
         stats.occupancy > config.congestionOccupancy;
}

double
congestionWeight(const mobility::Edge& edge, const TrafficView& view, Time now)
{
  const auto* entry = view.fresh(edge.id, now);
  if (entry == nullptr)
    return mobility::freeFlowTime(edge);
  return edge.length / std::min(edge.speedLimit, std::max(entry->stats.meanSpeed, 1.0));
}

RerouteDecision
decideReroute(const mobility::RoadGraph& graph, const TrafficView& view,
              const std::vector<std::string>& remaining, Time now, const TmsConfig& config)
{
  RerouteDecision decision;
  if (remaining.size() < 2)
    return decision;

  for (size_t i = 1; i < remaining.size(); ++i) {
    const auto* entry = view.fresh(remaining[i], now);
    if (entry != nullptr && isCongested(entry->stats, graph.edge(remaining[i]), config)) {
      decision.congestionAhead = true;
      break;
    }
  }
  if (!decision.congestionAhead)
    return decision;

  auto weight = [&] (const mobility::Edge& e) { return congestionWeight(e, view, now); };
  decision.currentCost = mobility::routeCost(graph, remaining, weight);
  auto alternative = mobility::shortestEdgePath(graph, remaining.front(), remaining.back(), weight);
  decision.alternativeCost = alternative.cost;
  if (alternative.cost < (1.0 - config.improvementMargin) * decision.currentCost &&
      alternative.edges != remaining)
    decision.newRoute = std::move(alternative.edges);
  return decision;
}

} // namespace vndn::apps
