#ifndef VNDN_MOBILITY_ROAD_GRAPH_HPP
#define VNDN_MOBILITY_ROAD_GRAPH_HPP

#include "vndn/sim/medium.hpp"

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace vndn::mobility {

using sim::Position;

struct Junction
{
  std::string id;
  double x = 0;
  double y = 0;
};

struct Edge
{
  std::string id;
  std::string from;
  std::string to;
  double length = 0;      ///< meters
  double speedLimit = 0;  ///< m/s
  int lanes = 1;
};

struct Bounds
{
  double minX = 0;
  double minY = 0;
  double maxX = 0;
  double maxY = 0;

  double
  areaKm2() const noexcept
  {
    return (maxX - minX) * (maxY - minY) / 1e6;
  }
};

class RoadGraph
{
public:
  class Error : public std::invalid_argument
  {
  public:
    using std::invalid_argument::invalid_argument;
  };

  void
  addJunction(Junction junction);

  /// \throw Error on unknown endpoints, duplicate id, non-positive length/speed, or lanes < 1
  void
  addEdge(Edge edge);

  const Junction&
  junction(const std::string& id) const;

  const Edge&
  edge(const std::string& id) const;

  bool
  hasEdge(const std::string& id) const
  {
    return m_edges.count(id) > 0;
  }

  const std::map<std::string, Junction>&
  junctions() const noexcept
  {
    return m_junctions;
  }

  const std::map<std::string, Edge>&
  edges() const noexcept
  {
    return m_edges;
  }

  /// Edge ids leaving \p junctionId, in lexicographic order.
  const std::vector<std::string>&
  outgoing(const std::string& junctionId) const;

  Bounds
  bounds() const;

  /// Area used for vehicle density: the bounding box, with each side at least as wide as a
  /// two-way carriageway of the widest road, so a straight highway still has an area.
  double
  areaKm2() const;

  /// Point at \p offset meters along the edge, measured from its start junction.
  Position
  pointOnEdge(const std::string& edgeId, double offset) const;

  /// Euclidean distance from \p p to the edge's straight segment.
  double
  distanceToEdge(const std::string& edgeId, const Position& p) const;

  bool
  isStronglyConnected() const;

  nlohmann::json
  toJson() const;

  /// Native format: {"junctions": [{id, x, y}], "edges": [{id, from, to, length, speed_limit, lanes}]}
  static RoadGraph
  fromJson(const nlohmann::json& doc);

  static RoadGraph
  load(const std::filesystem::path& file);

  void
  save(const std::filesystem::path& file) const;

private:
  std::map<std::string, Junction> m_junctions;
  std::map<std::string, Edge> m_edges;
  std::map<std::string, std::vector<std::string>> m_outgoing;
};

inline constexpr double LANE_WIDTH = 3.5; ///< meters
inline constexpr double URBAN_SPEED_LIMIT = 13.89;   ///< 50 km/h
inline constexpr double HIGHWAY_SPEED_LIMIT = 33.33; ///< 120 km/h

/// Manhattan lattice with junctions "j<r>_<c>" and a pair of directed edges
/// "j<r>_<c>-j<r'>_<c'>" between horizontal and vertical neighbors.
RoadGraph
generateGrid(int rows, int cols, double blockLength, double speedLimit = URBAN_SPEED_LIMIT,
             int lanes = 1);

/// Straight corridor from junction "w" at (0, 0) to "e" at (length, 0), one edge per direction.
RoadGraph
generateHighway(double length, int lanes = 3, double speedLimit = HIGHWAY_SPEED_LIMIT);

} // namespace vndn::mobility

#endif // VNDN_MOBILITY_ROAD_GRAPH_HPP
