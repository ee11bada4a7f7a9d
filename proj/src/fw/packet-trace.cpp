#include "vndn/fw/packet-trace.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace vndn::fw {

namespace {

std::string_view
toString(TraceDirection dir)
{
  switch (dir) {
  case TraceDirection::Tx:
    return "tx";
  case TraceDirection::Rx:
    return "rx";
  case TraceDirection::Event:
    return "ev";
  }
  return "?";
}

} // namespace

std::string
formatTraceLine(const TraceRecord& r)
{
  auto ns = r.time.count();
  char timeBuf[48];
  std::snprintf(timeBuf, sizeof(timeBuf), "%lld.%06lld", static_cast<long long>(ns / 1'000'000),
                static_cast<long long>(ns % 1'000'000));

  std::string line(timeBuf);
  line += ' ';
  line += std::to_string(r.node);
  line += ' ';
  line += table::toString(r.faceKind);
  line += ' ';
  line += toString(r.dir);
  line += ' ';
  line += r.packetType;
  line += ' ';
  line += r.name;
  line += ' ';
  line += r.nonce ? std::to_string(*r.nonce) : "-";
  line += ' ';
  line += r.verdict;
  return line;
}

TraceRecord
parseTraceLine(std::string_view line)
{
  std::istringstream is{std::string(line)};
  std::string time, node, face, dir, type, name, nonce, verdict, extra;
  if (!(is >> time >> node >> face >> dir >> type >> name >> nonce >> verdict) || (is >> extra)) {
    throw std::invalid_argument("trace line does not have 8 fields: '" + std::string(line) + "'");
  }

  TraceRecord r;
  auto dot = time.find('.');
  if (dot == std::string::npos || time.size() - dot - 1 != 6) {
    throw std::invalid_argument("bad trace time '" + time + "'");
  }
  long long ms = std::stoll(time.substr(0, dot));
  long long frac = std::stoll(time.substr(dot + 1));
  r.time = Time(ms * 1'000'000 + frac);
  r.node = static_cast<NodeId>(std::stoul(node));

  if (face == "app")
    r.faceKind = table::FaceKind::App;
  else if (face == "wireless")
    r.faceKind = table::FaceKind::WirelessAdhoc;
  else
    throw std::invalid_argument("bad face kind '" + face + "'");

  if (dir == "tx")
    r.dir = TraceDirection::Tx;
  else if (dir == "rx")
    r.dir = TraceDirection::Rx;
  else if (dir == "ev")
    r.dir = TraceDirection::Event;
  else
    throw std::invalid_argument("bad direction '" + dir + "'");

  r.packetType = type;
  r.name = name;
  if (nonce != "-")
    r.nonce = static_cast<uint32_t>(std::stoul(nonce));
  r.verdict = verdict;
  return r;
}

size_t
PacketTrace::add(TraceRecord record)
{
  m_records.push_back(std::move(record));
  return m_records.size() - 1;
}

void
PacketTrace::setVerdict(size_t index, std::string_view verdict)
{
  m_records.at(index).verdict = verdict;
}

void
PacketTrace::write(std::ostream& os) const
{
  for (const auto& r : m_records) {
    os << formatTraceLine(r) << '\n';
  }
}

} // namespace vndn::fw
