#include "vndn/apps/neighbor-table.hpp"

namespace vndn::apps {

void
NeighborTable::upsert(const ndn::BeaconInfo& info, Time now)
{
  m_entries.insert_or_assign(info.nodeId, NeighborEntry{info, now});
}

void
NeighborTable::purge(Time now)
{
  std::erase_if(m_entries, [&] (const auto& kv) { return now - kv.second.lastSeen > m_ttl; });
}

const NeighborEntry*
NeighborTable::find(const std::string& nodeId) const
{
  auto it = m_entries.find(nodeId);
  return it == m_entries.end() ? nullptr : &it->second;
}

} // namespace vndn::apps
