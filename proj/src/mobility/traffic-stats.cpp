#include "vndn/mobility/traffic-stats.hpp"

#include <algorithm>

namespace vndn::mobility {

TrafficStats::TrafficStats(const RoadGraph& graph, Duration window)
  : m_graph(graph)
  , m_window(window)
{
  if (m_window <= Duration::zero()) {
    throw std::invalid_argument("statistics window must be positive");
  }
}

void
TrafficStats::addSample(const std::string& edgeId, Time begin, Duration dt, double speed)
{
  if (!m_graph.hasEdge(edgeId)) {
    throw UnknownEdge("unknown edge '" + edgeId + "'");
  }
  Time end = begin + dt;
  Time t = begin;
  while (t < end) {
    uint64_t w = windowIndex(t, m_window);
    Time windowEnd = Time(m_window * static_cast<int64_t>(w + 1));
    Time pieceEnd = std::min(end, windowEnd);
    double seconds = toSeconds(pieceEnd - t);
    auto& acc = m_acc[{edgeId, w}];
    acc.speedSeconds += speed * seconds;
    acc.vehicleSeconds += seconds;
    ++acc.samples;
    t = pieceEnd;
  }
}

TrafficWindowStats
TrafficStats::get(const std::string& edgeId, uint64_t window) const
{
  if (!m_graph.hasEdge(edgeId)) {
    throw UnknownEdge("unknown edge '" + edgeId + "'");
  }
  const Edge& edge = m_graph.edge(edgeId);
  TrafficWindowStats stats{edgeId, window, edge.speedLimit, 0.0, 0};

  auto it = m_acc.find({edgeId, window});
  if (it == m_acc.end() || it->second.vehicleSeconds <= 0)
    return stats;

  const auto& acc = it->second;
  stats.meanSpeed = acc.speedSeconds / acc.vehicleSeconds;
  double capacity = toSeconds(m_window) * edge.lanes * edge.length / VEHICLE_SLOT_LENGTH;
  stats.occupancy = std::clamp(acc.vehicleSeconds / capacity, 0.0, 1.0);
  stats.sampleCount = acc.samples;
  return stats;
}

} // namespace vndn::mobility
