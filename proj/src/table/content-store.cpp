#include "vndn/table/content-store.hpp"

namespace vndn::table {

ContentStore::ContentStore(size_t capacity)
  : m_capacity(capacity)
{
}

bool
ContentStore::isStale(const CsEntry& entry, Time now)
{
  return now - entry.arrivalTime > Duration(entry.data.freshness);
}

void
ContentStore::erase(EntryMap::iterator it)
{
  m_lru.erase({it->second.lastUsed, it->second.arrivalTime, it->first});
  m_entries.erase(it);
}

void
ContentStore::touch(EntryMap::iterator it, Time now)
{
  auto& entry = it->second;
  m_lru.erase({entry.lastUsed, entry.arrivalTime, it->first});
  entry.lastUsed = std::max(entry.lastUsed, now);
  m_lru.emplace(entry.lastUsed, entry.arrivalTime, it->first);
}

std::optional<ndn::Data>
ContentStore::find(const ndn::Interest& interest, Time now)
{
  auto it = m_entries.lower_bound(interest.name);
  if (!interest.canBePrefix) {
    if (it == m_entries.end() || it->first != interest.name)
      return std::nullopt;
    if (isStale(it->second, now)) {
      erase(it);
      return std::nullopt;
    }
    touch(it, now);
    return it->second.data;
  }

  // names under the prefix are contiguous in the ordered map, starting at lower_bound
  while (it != m_entries.end() && interest.name.isPrefixOf(it->first)) {
    if (isStale(it->second, now)) {
      auto stale = it++;
      erase(stale);
      continue;
    }
    touch(it, now);
    return it->second.data;
  }
  return std::nullopt;
}

std::optional<ndn::Name>
ContentStore::insert(const ndn::Data& data, Time now)
{
  if (m_capacity == 0)
    return std::nullopt;

  if (auto it = m_entries.find(data.name); it != m_entries.end()) {
    erase(it);
  }

  std::optional<ndn::Name> evicted;
  if (m_entries.size() >= m_capacity) {
    auto victim = m_lru.begin();
    evicted = std::get<2>(*victim);
    m_entries.erase(*evicted);
    m_lru.erase(victim);
  }

  m_entries.emplace(data.name, CsEntry{data, now, now});
  m_lru.emplace(now, now, data.name);
  return evicted;
}

const CsEntry*
ContentStore::get(const ndn::Name& name) const
{
  auto it = m_entries.find(name);
  return it == m_entries.end() ? nullptr : &it->second;
}

void
ContentStore::clear()
{
  m_entries.clear();
  m_lru.clear();
}

} // namespace vndn::table
