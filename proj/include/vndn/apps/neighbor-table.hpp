#ifndef VNDN_APPS_NEIGHBOR_TABLE_HPP
#define VNDN_APPS_NEIGHBOR_TABLE_HPP

#include "vndn/common.hpp"
#include "vndn/ndn/naming.hpp"

#include <map>
#include <string>

namespace vndn::apps {

struct NeighborEntry
{
  ndn::BeaconInfo info;
  Time lastSeen{0};
};

/// Latest beacon per neighbor; an entry older than ttl is gone after purge().
class NeighborTable
{
public:
  explicit
  NeighborTable(Duration ttl)
    : m_ttl(ttl)
  {
  }

  void
  upsert(const ndn::BeaconInfo& info, Time now);

  /// Drops entries with now - lastSeen > ttl.
  void
  purge(Time now);

  const NeighborEntry*
  find(const std::string& nodeId) const;

  size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  Duration
  ttl() const noexcept
  {
    return m_ttl;
  }

  const std::map<std::string, NeighborEntry>&
  entries() const noexcept
  {
    return m_entries;
  }

private:
  Duration m_ttl;
  std::map<std::string, NeighborEntry> m_entries;
};

} // namespace vndn::apps

#endif // VNDN_APPS_NEIGHBOR_TABLE_HPP
