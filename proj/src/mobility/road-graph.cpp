#include "vndn/mobility/road-graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>

namespace vndn::mobility {

void
RoadGraph::addJunction(Junction junction)
{
  if (junction.id.empty()) {
    throw Error("junction id is empty");
  }
  if (!m_junctions.emplace(junction.id, junction).second) {
    throw Error("duplicate junction '" + junction.id + "'");
  }
  m_outgoing[junction.id];
}

void
RoadGraph::addEdge(Edge edge)
{
  if (edge.id.empty()) {
    throw Error("edge id is empty");
  }
  if (m_junctions.count(edge.from) == 0 || m_junctions.count(edge.to) == 0) {
    throw Error("edge '" + edge.id + "' references an unknown junction");
  }
  if (!(edge.length > 0)) {
    throw Error("edge '" + edge.id + "' has non-positive length");
  }
  if (!(edge.speedLimit > 0)) {
    throw Error("edge '" + edge.id + "' has non-positive speed limit");
  }
  if (edge.lanes < 1) {
    throw Error("edge '" + edge.id + "' has no lanes");
  }
  std::string from = edge.from;
  std::string id = edge.id;
  if (!m_edges.emplace(id, std::move(edge)).second) {
    throw Error("duplicate edge '" + id + "'");
  }
  auto& out = m_outgoing[from];
  out.insert(std::upper_bound(out.begin(), out.end(), id), id);
}

const Junction&
RoadGraph::junction(const std::string& id) const
{
  auto it = m_junctions.find(id);
  if (it == m_junctions.end()) {
    throw Error("unknown junction '" + id + "'");
  }
  return it->second;
}

const Edge&
RoadGraph::edge(const std::string& id) const
{
  auto it = m_edges.find(id);
  if (it == m_edges.end()) {
    throw Error("unknown edge '" + id + "'");
  }
  return it->second;
}

const std::vector<std::string>&
RoadGraph::outgoing(const std::string& junctionId) const
{
  auto it = m_outgoing.find(junctionId);
  if (it == m_outgoing.end()) {
    throw Error("unknown junction '" + junctionId + "'");
  }
  return it->second;
}

Bounds
RoadGraph::bounds() const
{
  if (m_junctions.empty())
    return {};
  Bounds b{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
           std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (const auto& [_, j] : m_junctions) {
    b.minX = std::min(b.minX, j.x);
    b.minY = std::min(b.minY, j.y);
    b.maxX = std::max(b.maxX, j.x);
    b.maxY = std::max(b.maxY, j.y);
  }
  return b;
}

double
RoadGraph::areaKm2() const
{
  if (m_junctions.empty())
    return 0;
  int lanes = 0;
  for (const auto& [_, e] : m_edges)
    lanes = std::max(lanes, e.lanes);
  double minSide = 2 * lanes * LANE_WIDTH;
  Bounds b = bounds();
  return std::max(b.maxX - b.minX, minSide) * std::max(b.maxY - b.minY, minSide) / 1e6;
}

Position
RoadGraph::pointOnEdge(const std::string& edgeId, double offset) const
{
  const Edge& e = edge(edgeId);
  const Junction& a = junction(e.from);
  const Junction& b = junction(e.to);
  double f = std::clamp(offset / e.length, 0.0, 1.0);
  return {a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f};
}

double
RoadGraph::distanceToEdge(const std::string& edgeId, const Position& p) const
{
  const Edge& e = edge(edgeId);
  const Junction& a = junction(e.from);
  const Junction& b = junction(e.to);
  double dx = b.x - a.x;
  double dy = b.y - a.y;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0) : 0.0;
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

bool
RoadGraph::isStronglyConnected() const
{
  if (m_junctions.empty())
    return true;

  auto reachAll = [this] (bool reverse) {
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [_, e] : m_edges) {
      if (reverse)
        adj[e.to].push_back(e.from);
      else
        adj[e.from].push_back(e.to);
    }
    std::set<std::string> seen{m_junctions.begin()->first};
    std::vector<std::string> stack{m_junctions.begin()->first};
    while (!stack.empty()) {
      auto j = stack.back();
      stack.pop_back();
      for (const auto& n : adj[j]) {
        if (seen.insert(n).second)
          stack.push_back(n);
      }
    }
    return seen.size() == m_junctions.size();
  };
  return reachAll(false) && reachAll(true);
}

nlohmann::json
RoadGraph::toJson() const
{
  nlohmann::json doc;
  doc["junctions"] = nlohmann::json::array();
  for (const auto& [_, j] : m_junctions) {
    doc["junctions"].push_back({{"id", j.id}, {"x", j.x}, {"y", j.y}});
  }
  doc["edges"] = nlohmann::json::array();
  for (const auto& [_, e] : m_edges) {
    doc["edges"].push_back({{"id", e.id}, {"from", e.from}, {"to", e.to}, {"length", e.length},
                            {"speed_limit", e.speedLimit}, {"lanes", e.lanes}});
  }
  return doc;
}

RoadGraph
RoadGraph::fromJson(const nlohmann::json& doc)
{
  RoadGraph g;
  try {
    for (const auto& j : doc.at("junctions")) {
      g.addJunction({j.at("id").get<std::string>(), j.at("x").get<double>(), j.at("y").get<double>()});
    }
    for (const auto& e : doc.at("edges")) {
      g.addEdge({e.at("id").get<std::string>(), e.at("from").get<std::string>(),
                 e.at("to").get<std::string>(), e.at("length").get<double>(),
                 e.at("speed_limit").get<double>(), e.at("lanes").get<int>()});
    }
  }
  catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("malformed network: ") + ex.what());
  }
  return g;
}

RoadGraph
RoadGraph::load(const std::filesystem::path& file)
{
  std::ifstream is(file);
  if (!is) {
    throw Error("cannot open network file " + file.string());
  }
  nlohmann::json doc;
  try {
    is >> doc;
  }
  catch (const nlohmann::json::parse_error& ex) {
    throw Error("network file " + file.string() + " is not valid JSON: " + ex.what());
  }
  return fromJson(doc);
}

void
RoadGraph::save(const std::filesystem::path& file) const
{
  std::ofstream os(file);
  if (!os) {
    throw Error("cannot write network file " + file.string());
  }
  os << toJson().dump(2) << '\n';
}

namespace {

std::string
gridJunction(int r, int c)
{
  return "j" + std::to_string(r) + "_" + std::to_string(c);
}

} // namespace

RoadGraph
generateGrid(int rows, int cols, double blockLength, double speedLimit, int lanes)
{
  if (rows < 2 || cols < 2) {
    throw RoadGraph::Error("a grid needs at least 2 rows and 2 columns");
  }
  if (!(blockLength > 0)) {
    throw RoadGraph::Error("grid block length must be positive");
  }
  RoadGraph g;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      g.addJunction({gridJunction(r, c), c * blockLength, r * blockLength});
    }
  }
  auto link = [&] (int r1, int c1, int r2, int c2) {
    auto a = gridJunction(r1, c1);
    auto b = gridJunction(r2, c2);
    g.addEdge({a + "-" + b, a, b, blockLength, speedLimit, lanes});
    g.addEdge({b + "-" + a, b, a, blockLength, speedLimit, lanes});
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols)
        link(r, c, r, c + 1);
      if (r + 1 < rows)
        link(r, c, r + 1, c);
    }
  }
  return g;
}

RoadGraph
generateHighway(double length, int lanes, double speedLimit)
{
  if (!(length > 0)) {
    throw RoadGraph::Error("highway length must be positive");
  }
  RoadGraph g;
  g.addJunction({"w", 0, 0});
  g.addJunction({"e", length, 0});
  g.addEdge({"w-e", "w", "e", length, speedLimit, lanes});
  g.addEdge({"e-w", "e", "w", length, speedLimit, lanes});
  return g;
}

} // namespace vndn::mobility
