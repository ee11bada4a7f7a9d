#ifndef VNDN_MOBILITY_ROUTING_HPP
#define VNDN_MOBILITY_ROUTING_HPP

#include "vndn/mobility/road-graph.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vndn::mobility {

using WeightFn = std::function<double(const Edge&)>;

struct Path
{
  std::vector<std::string> edges;
  double cost = 0;
};

class Unreachable : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Travel time at the speed limit.
double
freeFlowTime(const Edge& edge);

/** \brief Dijkstra between junctions. Weights must be positive.
 *
 *  Among equal-cost predecessors the edge with the lexicographically smallest id wins, so
 *  the result is a deterministic function of the graph and weights.
 *  \throw Unreachable
 */
Path
shortestPath(const RoadGraph& graph, const std::string& fromJunction, const std::string& toJunction,
             const WeightFn& weight);

/// Cheapest edge sequence that starts with \p fromEdge and ends with \p toEdge, both included
/// in the route and in its cost.
Path
shortestEdgePath(const RoadGraph& graph, const std::string& fromEdge, const std::string& toEdge,
                 const WeightFn& weight);

/// Sum of weights; \throw RoadGraph::Error if consecutive edges do not connect
double
routeCost(const RoadGraph& graph, const std::vector<std::string>& edges, const WeightFn& weight);

bool
isContinuous(const RoadGraph& graph, const std::vector<std::string>& edges);

} // namespace vndn::mobility

#endif // VNDN_MOBILITY_ROUTING_HPP
