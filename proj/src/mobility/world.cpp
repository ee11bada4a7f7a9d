#include "vndn/mobility/world.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace vndn::mobility {

World::World(RoadGraph graph, WorldConfig config, uint64_t seed)
  : m_graph(std::move(graph))
  , m_config(config)
  , m_rng(seed)
  , m_stats(m_graph, config.statsWindow)
{
  for (const auto& [id, _] : m_graph.junctions())
    m_junctionIds.push_back(id);
  double target = m_config.densityPerKm2 * m_graph.areaKm2();
  m_target = static_cast<size_t>(std::llround(target));
}

void
World::addIncident(Incident incident)
{
  m_graph.edge(incident.edgeId);
  if (!(incident.start < incident.end)) {
    throw std::invalid_argument("incident must start before it ends");
  }
  if (!(incident.speedFactor > 0 && incident.speedFactor <= 1)) {
    throw std::invalid_argument("incident speed factor must lie in (0, 1]");
  }
  m_incidents.push_back(std::move(incident));
}

double
World::effectiveSpeedLimit(const std::string& edgeId, Time t) const
{
  double factor = 1.0;
  for (const auto& inc : m_incidents) {
    if (inc.edgeId == edgeId && inc.start <= t && t < inc.end)
      factor = std::min(factor, inc.speedFactor);
  }
  return m_graph.edge(edgeId).speedLimit * factor;
}

void
World::addVehicle(const std::string& id, VehicleKind kind, std::vector<std::string> route, int lane,
                  double offset)
{
  if (route.empty() || !isContinuous(m_graph, route)) {
    throw RouteDiscontinuity("route of vehicle '" + id + "' is not a continuous edge sequence");
  }
  const Edge& first = m_graph.edge(route.front());
  if (lane < 0 || lane >= first.lanes) {
    throw BadLane("lane " + std::to_string(lane) + " does not exist on edge '" + first.id + "'");
  }
  if (m_vehicles.count(id) > 0) {
    throw std::invalid_argument("vehicle '" + id + "' already exists");
  }
  Vehicle v;
  v.id = id;
  v.kind = kind;
  v.route = std::move(route);
  v.lane = lane;
  v.offset = std::clamp(offset, 0.0, first.length);
  v.departTime = m_now;
  updatePosition(v);
  m_vehicles.emplace(id, std::move(v));
  ++m_spawned;
}

Vehicle&
World::vehicle(const std::string& id)
{
  auto it = m_vehicles.find(id);
  if (it == m_vehicles.end()) {
    throw UnknownVehicle("unknown vehicle '" + id + "'");
  }
  return it->second;
}

const Vehicle*
World::findVehicle(const std::string& id) const
{
  auto it = m_vehicles.find(id);
  return it == m_vehicles.end() ? nullptr : &it->second;
}

std::vector<const Vehicle*>
World::activeVehicles() const
{
  std::vector<const Vehicle*> out;
  out.reserve(m_vehicles.size());
  for (const auto& [_, v] : m_vehicles)
    out.push_back(&v);
  return out;
}

void
World::setRoute(const std::string& vehicleId, const std::vector<std::string>& newRoute)
{
  Vehicle& v = vehicle(vehicleId);
  if (newRoute.empty() || newRoute.front() != v.currentEdge()) {
    throw RouteDiscontinuity("new route of '" + vehicleId + "' must start with its current edge '" +
                             v.currentEdge() + "'");
  }
  if (newRoute.back() != v.destinationEdge()) {
    throw RouteDiscontinuity("new route of '" + vehicleId + "' must end at its destination edge '" +
                             v.destinationEdge() + "'");
  }
  if (!isContinuous(m_graph, newRoute)) {
    throw RouteDiscontinuity("new route of '" + vehicleId + "' is not continuous");
  }
  v.route.resize(v.routeIndex);
  v.route.insert(v.route.end(), newRoute.begin(), newRoute.end());
  v.color = VehicleColor::ReroutedBlue;
  ++v.reroutes;
}

void
World::setLane(const std::string& vehicleId, int lane)
{
  Vehicle& v = vehicle(vehicleId);
  int lanes = m_graph.edge(v.currentEdge()).lanes;
  if (lane < 0 || lane >= lanes) {
    throw BadLane("lane " + std::to_string(lane) + " does not exist on edge '" + v.currentEdge() + "'");
  }
  v.lane = lane;
}

void
World::updatePosition(Vehicle& v)
{
  v.position = m_graph.pointOnEdge(v.currentEdge(), v.offset);
}

StepEvents
World::step(Duration dt)
{
  if (dt <= Duration::zero()) {
    throw std::invalid_argument("step length must be positive");
  }
  StepEvents events;
  const double seconds = toSeconds(dt);
  const Time t0 = m_now;

  // leaders first: within each (edge, lane), descending offset; ties by id
  std::vector<Vehicle*> order;
  order.reserve(m_vehicles.size());
  for (auto& [_, v] : m_vehicles)
    order.push_back(&v);
  std::sort(order.begin(), order.end(), [] (const Vehicle* a, const Vehicle* b) {
    return std::forward_as_tuple(a->currentEdge(), a->lane, b->offset, a->id) <
           std::forward_as_tuple(b->currentEdge(), b->lane, a->offset, b->id);
  });

  // tail (smallest offset) per (edge, lane) as seen at the start of the step
  std::map<std::pair<std::string, int>, double> tail;
  for (const Vehicle* v : order) {
    auto key = std::make_pair(v->currentEdge(), v->lane);
    auto it = tail.find(key);
    if (it == tail.end() || v->offset < it->second)
      tail[key] = v->offset;
  }

  const Vehicle* leader = nullptr;
  std::vector<std::string> arrivedIds;
  for (Vehicle* v : order) {
    if (leader != nullptr && (leader->currentEdge() != v->currentEdge() || leader->lane != v->lane))
      leader = nullptr;

    const std::string edgeId = v->currentEdge();
    const Edge& edge = m_graph.edge(edgeId);
    double target = effectiveSpeedLimit(edgeId, t0);
    double speed = target;
    double startOffset = v->offset;
    double next = startOffset + speed * seconds;
    if (leader != nullptr) {
      double gap = leader->offset - startOffset;
      if (gap < target * m_config.headway + m_config.minGap) {
        speed = std::min(target, leader->speed);
        next = startOffset + speed * seconds;
      }
      next = std::min(next, leader->offset);
      next = std::max(next, startOffset);
    }

    if (next >= edge.length) {
      if (v->routeIndex + 1 == v->route.size()) {
        v->speed = speed;
        v->offset = edge.length;
        m_stats.addSample(edgeId, t0, dt, speed);
        arrivedIds.push_back(v->id);
        leader = v;
        continue;
      }
      const std::string& nextEdgeId = v->route[v->routeIndex + 1];
      const Edge& nextEdge = m_graph.edge(nextEdgeId);
      int nextLane = std::min(v->lane, nextEdge.lanes - 1);
      double carry = std::min(next - edge.length, effectiveSpeedLimit(nextEdgeId, t0) * seconds);
      auto t = tail.find({nextEdgeId, nextLane});
      bool blocked = false;
      if (t != tail.end()) {
        if (t->second < m_config.minGap)
          blocked = true;
        else
          carry = std::min(carry, t->second - m_config.minGap);
      }
      if (blocked) {
        v->offset = edge.length;
        v->speed = (edge.length - startOffset) / seconds;
      }
      else {
        v->routeIndex += 1;
        v->lane = nextLane;
        v->offset = carry;
        v->speed = std::min(speed, effectiveSpeedLimit(nextEdgeId, t0));
        auto& slot = tail[{nextEdgeId, nextLane}];
        slot = t == tail.end() ? carry : std::min(slot, carry);
      }
    }
    else {
      v->offset = next;
      v->speed = (next - startOffset) / seconds;
    }
    v->speed = std::clamp(v->speed, 0.0, effectiveSpeedLimit(v->currentEdge(), t0));
    m_stats.addSample(v->currentEdge(), t0, dt, v->speed);
    updatePosition(*v);
    leader = v;
  }

  m_now = t0 + dt;
  for (const auto& id : arrivedIds) {
    auto it = m_vehicles.find(id);
    Trip trip{id, it->second.kind, it->second.departTime, m_now, it->second.reroutes};
    m_trips.push_back(trip);
    m_vehicles.erase(it);
  }
  events.arrived = std::move(arrivedIds);
  spawnUpToTarget(events);
  return events;
}

void
World::spawnUpToTarget(StepEvents& events)
{
  if (m_junctionIds.size() < 2)
    return;
  std::uniform_int_distribution<size_t> pick(0, m_junctionIds.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  while (m_vehicles.size() < m_target) {
    const std::string& origin = m_junctionIds[pick(m_rng)];
    std::string destination = origin;
    while (destination == origin)
      destination = m_junctionIds[pick(m_rng)];

    Path path;
    try {
      path = shortestPath(m_graph, origin, destination, freeFlowTime);
    }
    catch (const Unreachable&) {
      continue;
    }
    int lanes = m_graph.edge(path.edges.front()).lanes;
    int lane = std::uniform_int_distribution<int>(0, lanes - 1)(m_rng);
    VehicleKind kind = unit(m_rng) < m_config.emergencyRatio ? VehicleKind::Emergency
                                                             : VehicleKind::Passenger;
    std::string id = "v" + std::to_string(m_nextVehicle++);
    addVehicle(id, kind, std::move(path.edges), lane, 0.0);
    events.spawned.push_back(id);
  }
}

} // namespace vndn::mobility
