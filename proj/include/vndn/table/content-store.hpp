#ifndef VNDN_TABLE_CONTENT_STORE_HPP
#define VNDN_TABLE_CONTENT_STORE_HPP

#include "vndn/common.hpp"
#include "vndn/ndn/packet.hpp"

#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace vndn::table {

struct CsEntry
{
  ndn::Data data;
  Time arrivalTime{0};
  Time lastUsed{0};
};

/** \brief Bounded cache of Data packets with least-recently-used replacement.
 *
 *  Victim order is (lastUsed, arrivalTime, name), smallest first. Stale entries are only
 *  discovered and removed when a lookup touches them.
 */
class ContentStore
{
public:
  explicit
  ContentStore(size_t capacity);

  /// Exact-name hit, or (with canBePrefix) the first fresh entry under the Interest name.
  std::optional<ndn::Data>
  find(const ndn::Interest& interest, Time now);

  /// \return the name evicted to make room, if any
  std::optional<ndn::Name>
  insert(const ndn::Data& data, Time now);

  size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  size_t
  capacity() const noexcept
  {
    return m_capacity;
  }

  bool
  contains(const ndn::Name& name) const
  {
    return m_entries.count(name) > 0;
  }

  const CsEntry*
  get(const ndn::Name& name) const;

  void
  clear();

private:
  using EntryMap = std::map<ndn::Name, CsEntry>;

  static bool
  isStale(const CsEntry& entry, Time now);

  void
  erase(EntryMap::iterator it);

  void
  touch(EntryMap::iterator it, Time now);

private:
  size_t m_capacity;
  EntryMap m_entries;
  std::set<std::tuple<Time, Time, ndn::Name>> m_lru;
};

} // namespace vndn::table

#endif // VNDN_TABLE_CONTENT_STORE_HPP
