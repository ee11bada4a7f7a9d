#include "vndn/mobility/fcd-trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vndn::mobility {

namespace {

struct Tag
{
  size_t line = 0;
  std::string name;
  bool closing = false;
  bool selfClosing = false;
  std::map<std::string, std::string> attrs;
};

/// Minimal scanner for the flat fcd-export dialect.
class TagScanner
{
public:
  explicit
  TagScanner(std::string_view text)
    : m_text(text)
  {
  }

  bool
  next(Tag& tag)
  {
    while (true) {
      size_t open = m_text.find('<', m_pos);
      if (open == std::string_view::npos)
        return false;
      advanceTo(open);

      if (m_text.substr(open, 4) == "<!--") {
        size_t end = m_text.find("-->", open);
        if (end == std::string_view::npos)
          throw ParseError(m_line, "unterminated comment");
        advanceTo(end + 3);
        continue;
      }
      size_t close = m_text.find('>', open);
      if (close == std::string_view::npos)
        throw ParseError(m_line, "unterminated tag");
      std::string_view body = m_text.substr(open + 1, close - open - 1);
      size_t tagLine = m_line;
      advanceTo(close + 1);

      if (body.empty())
        throw ParseError(tagLine, "empty tag");
      if (body.front() == '?' || body.front() == '!')
        continue;

      tag = Tag{};
      tag.line = tagLine;
      if (body.front() == '/') {
        tag.closing = true;
        body.remove_prefix(1);
      }
      if (!body.empty() && body.back() == '/') {
        tag.selfClosing = true;
        body.remove_suffix(1);
      }
      parseBody(body, tag);
      return true;
    }
  }

private:
  void
  advanceTo(size_t pos)
  {
    m_line += static_cast<size_t>(std::count(m_text.begin() + static_cast<std::ptrdiff_t>(m_pos),
                                             m_text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
    m_pos = pos;
  }

  static bool
  isSpace(char c)
  {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }

  void
  parseBody(std::string_view body, Tag& tag) const
  {
    size_t i = 0;
    while (i < body.size() && !isSpace(body[i]))
      ++i;
    tag.name = std::string(body.substr(0, i));
    if (tag.name.empty())
      throw ParseError(tag.line, "tag without a name");

    while (true) {
      while (i < body.size() && isSpace(body[i]))
        ++i;
      if (i >= body.size())
        break;
      size_t eq = body.find('=', i);
      if (eq == std::string_view::npos)
        throw ParseError(tag.line, "attribute without a value in <" + tag.name + ">");
      std::string key(body.substr(i, eq - i));
      while (!key.empty() && isSpace(key.back()))
        key.pop_back();
      size_t q = eq + 1;
      while (q < body.size() && isSpace(body[q]))
        ++q;
      if (q >= body.size() || (body[q] != '"' && body[q] != '\''))
        throw ParseError(tag.line, "unquoted attribute '" + key + "' in <" + tag.name + ">");
      char quote = body[q];
      size_t end = body.find(quote, q + 1);
      if (end == std::string_view::npos)
        throw ParseError(tag.line, "unterminated attribute '" + key + "' in <" + tag.name + ">");
      tag.attrs[key] = std::string(body.substr(q + 1, end - q - 1));
      i = end + 1;
    }
  }

private:
  std::string_view m_text;
  size_t m_pos = 0;
  size_t m_line = 1;
};

double
numberAttr(const Tag& tag, const std::string& key, std::optional<double> fallback = std::nullopt)
{
  auto it = tag.attrs.find(key);
  if (it == tag.attrs.end()) {
    if (fallback)
      return *fallback;
    throw ParseError(tag.line, "<" + tag.name + "> is missing attribute '" + key + "'");
  }
  const std::string& s = it->second;
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
    throw ParseError(tag.line, "attribute '" + key + "' of <" + tag.name + "> is not a number: '" + s + "'");
  return value;
}

} // namespace

FcdTrace
FcdTrace::parse(std::string_view xml)
{
  FcdTrace trace;
  TagScanner scanner(xml);
  Tag tag;
  bool inExport = false;
  bool inTimestep = false;
  bool sawExport = false;

  while (scanner.next(tag)) {
    if (tag.name == "fcd-export") {
      if (tag.closing) {
        if (!inExport || inTimestep)
          throw ParseError(tag.line, "unexpected </fcd-export>");
        inExport = false;
      }
      else {
        if (sawExport)
          throw ParseError(tag.line, "second <fcd-export>");
        sawExport = true;
        inExport = !tag.selfClosing;
      }
    }
    else if (tag.name == "timestep") {
      if (tag.closing) {
        if (!inTimestep)
          throw ParseError(tag.line, "unexpected </timestep>");
        inTimestep = false;
        continue;
      }
      if (!inExport || inTimestep)
        throw ParseError(tag.line, "<timestep> outside <fcd-export> or nested");
      double t = numberAttr(tag, "time");
      if (t < 0)
        throw ParseError(tag.line, "negative timestep time");
      Time when = fromSeconds(t);
      if (!trace.timesteps.empty() && when <= trace.timesteps.back().time)
        throw ParseError(tag.line, "timestep times must increase");
      trace.timesteps.push_back({when, {}});
      inTimestep = !tag.selfClosing;
    }
    else if (tag.name == "vehicle") {
      if (!inTimestep || tag.closing)
        throw ParseError(tag.line, "<vehicle> outside a <timestep>");
      FcdSample s;
      auto id = tag.attrs.find("id");
      if (id == tag.attrs.end() || id->second.empty())
        throw ParseError(tag.line, "<vehicle> is missing attribute 'id'");
      s.vehicleId = id->second;
      s.x = numberAttr(tag, "x");
      s.y = numberAttr(tag, "y");
      s.speed = numberAttr(tag, "speed", 0.0);
      if (auto lane = tag.attrs.find("lane"); lane != tag.attrs.end())
        s.lane = lane->second;
      trace.timesteps.back().vehicles.push_back(std::move(s));
    }
    // other elements (persons, containers, ...) are not part of the replay
  }
  if (!sawExport)
    throw ParseError(1, "no <fcd-export> element");
  if (inTimestep || inExport)
    throw ParseError(static_cast<size_t>(std::count(xml.begin(), xml.end(), '\n')) + 1,
                     "unexpected end of document");
  return trace;
}

FcdTrace
FcdTrace::load(const std::filesystem::path& file)
{
  std::ifstream is(file);
  if (!is)
    throw std::runtime_error("cannot open FCD trace " + file.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse(buf.str());
}

std::pair<std::string, int>
splitLaneId(const std::string& laneId)
{
  auto pos = laneId.rfind('_');
  if (pos == std::string::npos || pos + 1 == laneId.size())
    return {laneId, 0};
  int lane = 0;
  const char* begin = laneId.data() + pos + 1;
  const char* end = laneId.data() + laneId.size();
  auto [ptr, ec] = std::from_chars(begin, end, lane);
  if (ec != std::errc() || ptr != end)
    return {laneId, 0};
  return {laneId.substr(0, pos), lane};
}

ReplayWorld::ReplayWorld(FcdTrace trace, RoadGraph graph, Duration statsWindow)
  : m_graph(std::move(graph))
  , m_stats(m_graph, statsWindow)
{
  const auto& steps = trace.timesteps;
  for (size_t k = 0; k < steps.size(); ++k) {
    for (const auto& s : steps[k].vehicles) {
      m_tracks[s.vehicleId].samples.emplace_back(steps[k].time, s);
    }
  }
  // leave at the first timestep after the last sample
  for (auto& [id, track] : m_tracks) {
    Time last = track.samples.back().first;
    auto after = std::upper_bound(steps.begin(), steps.end(), last,
                                  [] (Time t, const FcdTimestep& ts) { return t < ts.time; });
    if (after != steps.end())
      track.leaveTime = after->time;
  }
}

std::optional<Time>
ReplayWorld::departureFromTrace(const std::string& vehicleId) const
{
  auto it = m_tracks.find(vehicleId);
  if (it == m_tracks.end())
    throw UnknownVehicle("vehicle '" + vehicleId + "' is not in the trace");
  return it->second.leaveTime;
}

void
ReplayWorld::place(Vehicle& v, const Track& track, Time t) const
{
  const auto& samples = track.samples;
  auto after = std::upper_bound(samples.begin(), samples.end(), t,
                                [] (Time x, const auto& s) { return x < s.first; });
  const FcdSample* ref = nullptr;
  if (after == samples.begin()) {
    ref = &samples.front().second;
    v.position = {ref->x, ref->y};
    v.speed = ref->speed;
  }
  else if (after == samples.end()) {
    ref = &samples.back().second;
    v.position = {ref->x, ref->y};
    v.speed = ref->speed;
  }
  else {
    const auto& [ta, a] = *(after - 1);
    const auto& [tb, b] = *after;
    double f = toSeconds(t - ta) / toSeconds(tb - ta);
    v.position = {a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f};
    v.speed = a.speed + (b.speed - a.speed) * f;
    ref = &a;
  }
  auto [edge, lane] = splitLaneId(ref->lane);
  v.route = {edge};
  v.routeIndex = 0;
  v.lane = lane;
}

StepEvents
ReplayWorld::step(Duration dt)
{
  if (dt <= Duration::zero()) {
    throw std::invalid_argument("step length must be positive");
  }
  StepEvents events;
  Time t0 = m_now;
  m_now = t0 + dt;

  for (auto& [id, v] : m_active) {
    if (m_graph.hasEdge(v.route.front()))
      m_stats.addSample(v.route.front(), t0, dt, v.speed);
  }

  for (const auto& [id, track] : m_tracks) {
    bool started = track.samples.front().first <= m_now;
    bool gone = track.leaveTime && *track.leaveTime <= m_now;
    auto active = m_active.find(id);

    if (active != m_active.end() && gone) {
      m_trips.push_back({id, active->second.kind, active->second.departTime, *track.leaveTime, 0});
      m_active.erase(active);
      m_finished.insert(id);
      events.arrived.push_back(id);
    }
    else if (active == m_active.end() && started && !gone && m_finished.count(id) == 0) {
      Vehicle v;
      v.id = id;
      v.departTime = track.samples.front().first;
      place(v, track, m_now);
      m_active.emplace(id, std::move(v));
      ++m_spawned;
      events.spawned.push_back(id);
    }
    else if (active != m_active.end()) {
      place(active->second, track, m_now);
    }
  }
  return events;
}

const Vehicle*
ReplayWorld::findVehicle(const std::string& id) const
{
  auto it = m_active.find(id);
  return it == m_active.end() ? nullptr : &it->second;
}

std::vector<const Vehicle*>
ReplayWorld::activeVehicles() const
{
  std::vector<const Vehicle*> out;
  for (const auto& [_, v] : m_active)
    out.push_back(&v);
  return out;
}

void
ReplayWorld::setRoute(const std::string&, const std::vector<std::string>&)
{
  throw RerouteUnsupportedInReplay("routes cannot be changed while replaying a recorded trace");
}

void
ReplayWorld::setLane(const std::string&, int)
{
  throw RerouteUnsupportedInReplay("lanes cannot be changed while replaying a recorded trace");
}

} // namespace vndn::mobility
