#include "vndn/sim/scheduler.hpp"

#include <stdexcept>

namespace vndn::sim {

EventId
Scheduler::schedule(Duration delay, Callback cb)
{
  if (delay < Duration::zero()) {
    throw std::invalid_argument("cannot schedule an event in the past");
  }
  return scheduleAt(m_now + delay, std::move(cb));
}

EventId
Scheduler::scheduleAt(Time when, Callback cb)
{
  if (when < m_now) {
    throw std::invalid_argument("cannot schedule an event in the past");
  }
  EventId id = m_nextSeq++;
  m_queue.push({when, id, std::move(cb)});
  return id;
}

void
Scheduler::cancel(EventId id)
{
  if (id < m_nextSeq)
    m_cancelled.insert(id);
}

void
Scheduler::execute(Item item)
{
  m_now = item.when;
  ++m_executed;
  for (uint64_t v : {static_cast<uint64_t>(item.when.count()), item.seq}) {
    m_digest ^= v;
    m_digest *= 0x100000001b3ULL;
  }
  item.cb();
}

bool
Scheduler::runOne()
{
  while (!m_queue.empty()) {
    // priority_queue::top is const; the callback is moved out before pop
    Item item = std::move(const_cast<Item&>(m_queue.top()));
    m_queue.pop();
    if (m_cancelled.erase(item.seq) > 0)
      continue;
    execute(std::move(item));
    return true;
  }
  return false;
}

void
Scheduler::runUntil(Time end)
{
  while (!m_queue.empty() && m_queue.top().when <= end) {
    runOne();
  }
  if (end > m_now)
    m_now = end;
}

} // namespace vndn::sim
