#include "vndn/mobility/routing.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <tuple>

namespace vndn::mobility {

double
freeFlowTime(const Edge& edge)
{
  return edge.length / edge.speedLimit;
}

Path
shortestPath(const RoadGraph& graph, const std::string& fromJunction, const std::string& toJunction,
             const WeightFn& weight)
{
  graph.junction(fromJunction);
  graph.junction(toJunction);

  struct Label
  {
    double cost = std::numeric_limits<double>::infinity();
    std::string viaEdge;
    bool done = false;
  };
  std::map<std::string, Label> labels;
  using Item = std::pair<double, std::string>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;

  labels[fromJunction].cost = 0;
  queue.emplace(0.0, fromJunction);
  while (!queue.empty()) {
    auto [cost, j] = queue.top();
    queue.pop();
    Label& label = labels[j];
    if (label.done || cost > label.cost)
      continue;
    label.done = true;
    if (j == toJunction)
      break;

    for (const auto& edgeId : graph.outgoing(j)) {
      const Edge& e = graph.edge(edgeId);
      double w = weight(e);
      if (!(w > 0)) {
        throw std::invalid_argument("edge weight for '" + edgeId + "' is not positive");
      }
      Label& next = labels[e.to];
      if (next.done)
        continue;
      double candidate = cost + w;
      if (candidate < next.cost || (candidate == next.cost && edgeId < next.viaEdge)) {
        next.cost = candidate;
        next.viaEdge = edgeId;
        queue.emplace(candidate, e.to);
      }
    }
  }

  auto it = labels.find(toJunction);
  if (it == labels.end() || !it->second.done) {
    throw Unreachable("no route from junction '" + fromJunction + "' to '" + toJunction + "'");
  }

  Path path;
  path.cost = it->second.cost;
  for (std::string j = toJunction; j != fromJunction;) {
    const std::string& via = labels[j].viaEdge;
    path.edges.push_back(via);
    j = graph.edge(via).from;
  }
  std::reverse(path.edges.begin(), path.edges.end());
  return path;
}

Path
shortestEdgePath(const RoadGraph& graph, const std::string& fromEdge, const std::string& toEdge,
                 const WeightFn& weight)
{
  const Edge& first = graph.edge(fromEdge);
  const Edge& last = graph.edge(toEdge);
  if (fromEdge == toEdge) {
    return {{fromEdge}, weight(first)};
  }

  Path middle;
  if (first.to != last.from) {
    middle = shortestPath(graph, first.to, last.from, weight);
  }
  Path path;
  path.edges.push_back(fromEdge);
  path.edges.insert(path.edges.end(), middle.edges.begin(), middle.edges.end());
  path.edges.push_back(toEdge);
  path.cost = weight(first) + middle.cost + weight(last);
  return path;
}

bool
isContinuous(const RoadGraph& graph, const std::vector<std::string>& edges)
{
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!graph.hasEdge(edges[i]) || !graph.hasEdge(edges[i + 1]))
      return false;
    if (graph.edge(edges[i]).to != graph.edge(edges[i + 1]).from)
      return false;
  }
  return edges.empty() || graph.hasEdge(edges.back());
}

double
routeCost(const RoadGraph& graph, const std::vector<std::string>& edges, const WeightFn& weight)
{
  if (!isContinuous(graph, edges)) {
    throw RoadGraph::Error("route is not a continuous edge sequence");
  }
  double total = 0;
  for (const auto& id : edges)
    total += weight(graph.edge(id));
  return total;
}

} // namespace vndn::mobility
