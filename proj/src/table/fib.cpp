#include "vndn/table/fib.hpp"

#include <algorithm>

namespace vndn::table {

void
Fib::addNextHop(const ndn::Name& prefix, FaceId face)
{
  auto [it, inserted] = m_entries.try_emplace(prefix);
  if (inserted) {
    it->second.prefix = prefix;
  }
  auto& hops = it->second.nextHops;
  if (std::find(hops.begin(), hops.end(), face) == hops.end()) {
    hops.push_back(face);
  }
}

void
Fib::removeNextHop(const ndn::Name& prefix, FaceId face)
{
  auto it = m_entries.find(prefix);
  if (it == m_entries.end())
    return;
  auto& hops = it->second.nextHops;
  hops.erase(std::remove(hops.begin(), hops.end(), face), hops.end());
  if (hops.empty()) {
    m_entries.erase(it);
  }
}

const FibEntry*
Fib::findLongestPrefixMatch(const ndn::Name& name) const
{
  for (size_t len = name.size(); len > 0; --len) {
    auto it = m_entries.find(name.getPrefix(len));
    if (it != m_entries.end())
      return &it->second;
  }
  return nullptr;
}

const FibEntry*
Fib::findExact(const ndn::Name& prefix) const
{
  auto it = m_entries.find(prefix);
  return it == m_entries.end() ? nullptr : &it->second;
}

} // namespace vndn::table
