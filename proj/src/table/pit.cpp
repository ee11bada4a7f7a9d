#include "vndn/table/pit.hpp"

#include <algorithm>

namespace vndn::table {

bool
PitEntry::hasNonce(uint32_t nonce) const
{
  return std::any_of(inRecords.begin(), inRecords.end(), [=] (const auto& r) { return r.nonce == nonce; }) ||
         hasOutNonce(nonce);
}

bool
PitEntry::hasOutNonce(uint32_t nonce) const
{
  return std::any_of(outRecords.begin(), outRecords.end(), [=] (const auto& r) { return r.nonce == nonce; });
}

const InRecord*
PitEntry::findInRecord(FaceId face) const
{
  auto it = std::find_if(inRecords.begin(), inRecords.end(), [=] (const auto& r) { return r.face == face; });
  return it == inRecords.end() ? nullptr : &*it;
}

void
PitEntry::recordOut(FaceId face, uint32_t nonce, Time now)
{
  auto it = std::find_if(outRecords.begin(), outRecords.end(), [=] (const auto& r) { return r.face == face; });
  if (it == outRecords.end()) {
    outRecords.push_back({face, nonce, now});
  }
  else {
    *it = {face, nonce, now};
  }
}

std::pair<PitInsertResult, PitEntry*>
Pit::insertOrAggregate(const ndn::Interest& interest, FaceId inFace, Time now)
{
  Time expiry = now + Duration(interest.lifetime);

  auto it = m_entries.find(interest.name);
  if (it != m_entries.end() && it->second.expiry <= now) {
    m_entries.erase(it);
    it = m_entries.end();
  }

  if (it == m_entries.end()) {
    PitEntry entry;
    entry.name = interest.name;
    entry.canBePrefix = interest.canBePrefix;
    entry.inRecords.push_back({inFace, interest.nonce, expiry});
    entry.expiry = expiry;
    auto [pos, _] = m_entries.emplace(interest.name, std::move(entry));
    return {PitInsertResult::NewEntry, &pos->second};
  }

  PitEntry& entry = it->second;
  if (entry.hasNonce(interest.nonce)) {
    return {PitInsertResult::DuplicateNonce, &entry};
  }

  auto rec = std::find_if(entry.inRecords.begin(), entry.inRecords.end(),
                          [=] (const auto& r) { return r.face == inFace; });
  if (rec == entry.inRecords.end()) {
    entry.inRecords.push_back({inFace, interest.nonce, expiry});
  }
  else {
    *rec = {inFace, interest.nonce, expiry};
  }
  entry.canBePrefix = entry.canBePrefix || interest.canBePrefix;
  entry.expiry = std::max_element(entry.inRecords.begin(), entry.inRecords.end(),
                                  [] (const auto& a, const auto& b) { return a.expiry < b.expiry; })->expiry;
  return {PitInsertResult::Aggregated, &entry};
}

std::vector<PitEntry>
Pit::matchData(const ndn::Data& data)
{
  std::vector<PitEntry> matched;
  for (size_t len = 1; len < data.name.size(); ++len) {
    auto it = m_entries.find(data.name.getPrefix(len));
    if (it != m_entries.end() && it->second.canBePrefix) {
      matched.push_back(std::move(it->second));
      m_entries.erase(it);
    }
  }
  if (auto it = m_entries.find(data.name); it != m_entries.end()) {
    matched.push_back(std::move(it->second));
    m_entries.erase(it);
  }
  return matched;
}

std::vector<ExpiredPitEntry>
Pit::expire(Time now)
{
  std::vector<std::pair<Time, ndn::Name>> due;
  for (const auto& [name, entry] : m_entries) {
    if (entry.expiry <= now)
      due.emplace_back(entry.expiry, name);
  }
  std::sort(due.begin(), due.end());

  std::vector<ExpiredPitEntry> expired;
  expired.reserve(due.size());
  for (auto& [_, name] : due) {
    auto it = m_entries.find(name);
    expired.push_back({std::move(name), std::move(it->second.inRecords)});
    m_entries.erase(it);
  }
  return expired;
}

PitEntry*
Pit::find(const ndn::Name& name)
{
  auto it = m_entries.find(name);
  return it == m_entries.end() ? nullptr : &it->second;
}

const PitEntry*
Pit::find(const ndn::Name& name) const
{
  auto it = m_entries.find(name);
  return it == m_entries.end() ? nullptr : &it->second;
}

bool
Pit::erase(const ndn::Name& name)
{
  return m_entries.erase(name) > 0;
}

} // namespace vndn::table
