#ifndef VNDN_TABLE_FIB_HPP
#define VNDN_TABLE_FIB_HPP

#include "vndn/common.hpp"
#include "vndn/ndn/name.hpp"

#include <map>
#include <vector>

namespace vndn::table {

struct FibEntry
{
  ndn::Name prefix;
  std::vector<FaceId> nextHops;
};

class Fib
{
public:
  /// Adds \p face as a next hop of \p prefix, creating the entry if needed. No-op if present.
  void
  addNextHop(const ndn::Name& prefix, FaceId face);

  /// Removes the next hop; an entry left with no next hops is removed.
  void
  removeNextHop(const ndn::Name& prefix, FaceId face);

  /// Longest-prefix match; nullptr when no entry is a prefix of \p name.
  const FibEntry*
  findLongestPrefixMatch(const ndn::Name& name) const;

  const FibEntry*
  findExact(const ndn::Name& prefix) const;

  size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  void
  clear()
  {
    m_entries.clear();
  }

  const std::map<ndn::Name, FibEntry>&
  entries() const noexcept
  {
    return m_entries;
  }

private:
  std::map<ndn::Name, FibEntry> m_entries;
};

} // namespace vndn::table

#endif // VNDN_TABLE_FIB_HPP
