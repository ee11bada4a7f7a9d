#ifndef VNDN_TABLE_PIT_HPP
#define VNDN_TABLE_PIT_HPP

#include "vndn/common.hpp"
#include "vndn/ndn/packet.hpp"

#include <map>
#include <utility>
#include <vector>

namespace vndn::table {

struct InRecord
{
  FaceId face = INVALID_FACE;
  uint32_t nonce = 0;
  Time expiry{0};
};

struct OutRecord
{
  FaceId face = INVALID_FACE;
  uint32_t nonce = 0;
  Time sendTime{0};
};

struct PitEntry
{
  ndn::Name name;
  bool canBePrefix = false;
  std::vector<InRecord> inRecords;
  std::vector<OutRecord> outRecords;
  /// Latest in-record expiry.
  Time expiry{0};

  bool
  hasNonce(uint32_t nonce) const;

  bool
  hasOutNonce(uint32_t nonce) const;

  const InRecord*
  findInRecord(FaceId face) const;

  /// Adds an out-record, replacing an older one on the same face.
  void
  recordOut(FaceId face, uint32_t nonce, Time now);
};

enum class PitInsertResult {
  NewEntry,
  Aggregated,
  DuplicateNonce,
};

struct ExpiredPitEntry
{
  ndn::Name name;
  std::vector<InRecord> inRecords;
};

/** \brief Pending Interest Table keyed by exact name.
 *
 *  A nonce seen in any record of an entry marks a looped Interest. Entries whose expiry has
 *  passed are treated as absent by insertOrAggregate even before expire() collects them.
 */
class Pit
{
public:
  /// The entry pointer stays valid until the entry is removed.
  std::pair<PitInsertResult, PitEntry*>
  insertOrAggregate(const ndn::Interest& interest, FaceId inFace, Time now);

  /// Removes and returns every entry the Data satisfies: the exact name plus any
  /// prefix-accepting entry whose name is a prefix of the Data name.
  std::vector<PitEntry>
  matchData(const ndn::Data& data);

  /// Removes entries with expiry <= now, ordered by (expiry, name).
  std::vector<ExpiredPitEntry>
  expire(Time now);

  PitEntry*
  find(const ndn::Name& name);

  const PitEntry*
  find(const ndn::Name& name) const;

  bool
  erase(const ndn::Name& name);

  size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  bool
  empty() const noexcept
  {
    return m_entries.empty();
  }

  void
  clear()
  {
    m_entries.clear();
  }

  const std::map<ndn::Name, PitEntry>&
  entries() const noexcept
  {
    return m_entries;
  }

private:
  std::map<ndn::Name, PitEntry> m_entries;
};

} // namespace vndn::table

#endif // VNDN_TABLE_PIT_HPP
