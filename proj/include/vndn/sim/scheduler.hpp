#ifndef VNDN_SIM_SCHEDULER_HPP
#define VNDN_SIM_SCHEDULER_HPP

#include "vndn/common.hpp"

#include <functional>
#include <queue>
#include <unordered_set>
#include <vector>

namespace vndn::sim {

using EventId = uint64_t;

/** \brief Single-threaded discrete-event queue.
 *
 *  Events run in (time, sequence) order; the sequence number is assigned at scheduling time,
 *  so events due at the same instant run in the order they were scheduled. An event scheduled
 *  with zero delay from inside another event runs after the current one returns.
 */
class Scheduler
{
public:
  using Callback = std::function<void()>;

  EventId
  schedule(Duration delay, Callback cb);

  EventId
  scheduleAt(Time when, Callback cb);

  /// A cancelled event never runs. Only cancel events that have not run yet.
  void
  cancel(EventId id);

  /// Runs every event with time <= \p end, then leaves the clock at \p end.
  void
  runUntil(Time end);

  /// Runs the next event, if any. \return false when the queue is empty
  bool
  runOne();

  Time
  now() const noexcept
  {
    return m_now;
  }

  /// Queued events, counting cancelled ones that have not been popped yet.
  size_t
  queuedCount() const noexcept
  {
    return m_queue.size();
  }

  uint64_t
  executedCount() const noexcept
  {
    return m_executed;
  }

  /// Order-sensitive digest of (time, sequence) over every executed event.
  uint64_t
  executionDigest() const noexcept
  {
    return m_digest;
  }

private:
  struct Item
  {
    Time when;
    EventId seq;
    Callback cb;
  };

  struct Later
  {
    bool
    operator()(const Item& a, const Item& b) const noexcept
    {
      return a.when != b.when ? a.when > b.when : a.seq > b.seq;
    }
  };

  void
  execute(Item item);

private:
  Time m_now{0};
  EventId m_nextSeq = 0;
  uint64_t m_executed = 0;
  uint64_t m_digest = 0xcbf29ce484222325ULL;
  std::priority_queue<Item, std::vector<Item>, Later> m_queue;
  std::unordered_set<EventId> m_cancelled;
};

} // namespace vndn::sim

#endif // VNDN_SIM_SCHEDULER_HPP
