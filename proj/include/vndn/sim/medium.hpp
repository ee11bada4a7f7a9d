#ifndef VNDN_SIM_MEDIUM_HPP
#define VNDN_SIM_MEDIUM_HPP

#include "vndn/common.hpp"
#include "vndn/ndn/codec.hpp"
#include "vndn/sim/scheduler.hpp"

#include <functional>
#include <memory>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace vndn::sim {

struct Position
{
  double x = 0;
  double y = 0;

  friend bool
  operator==(const Position&, const Position&) = default;
};

double
distance(const Position& a, const Position& b);

enum class CollisionModel {
  None,
  /// Frames whose airtimes overlap at a receiver are all lost there.
  Slot,
};

struct MediumConfig
{
  double range = 70.0;                   ///< meters
  double dataRate = 6'000'000.0;         ///< bits per second
  Duration overhead = std::chrono::microseconds(100);
  double lossProbability = 0.0;
  size_t mtu = ndn::MAX_PAYLOAD_SIZE;
  CollisionModel collisions = CollisionModel::None;
};

struct Frame
{
  NodeId sender = 0;
  std::shared_ptr<const ndn::Buffer> bytes;
  Time start{0};
};

/// What the medium needs from an attached radio.
class RadioEndpoint
{
public:
  virtual
  ~RadioEndpoint() = default;

  virtual bool
  isRadioEnabled() const = 0;

  virtual Position
  radioPosition() const = 0;

  /// Changes whenever the endpoint is switched off and on again.
  virtual uint64_t
  radioEpoch() const = 0;

  virtual void
  receiveFrame(const Frame& frame) = 0;
};

/** \brief Unit-disk broadcast channel.
 *
 *  Receivers are chosen when a transmission starts: every enabled endpoint within range,
 *  except the sender. Each one gets the frame one airtime later, provided it is still enabled
 *  in the same epoch and the frame was neither randomly lost nor collided.
 */
class Medium
{
public:
  class FrameTooBig : public std::length_error
  {
  public:
    using std::length_error::length_error;
  };

  enum class DropReason {
    Lost,
    Collided,
    Inactive,
  };

  using DropObserver = std::function<void(NodeId receiver, const Frame&, DropReason)>;

  Medium(Scheduler& scheduler, MediumConfig config, uint64_t seed);

  void
  attach(NodeId id, RadioEndpoint& endpoint);

  Duration
  airtime(size_t bytes) const;

  /// \return the receivers a delivery was scheduled for
  /// \throw FrameTooBig if the frame exceeds the MTU
  std::vector<NodeId>
  broadcast(NodeId sender, ndn::Buffer bytes);

  /// True iff \p a and \p b can hear each other right now.
  bool
  inRange(NodeId a, NodeId b) const;

  const MediumConfig&
  config() const noexcept
  {
    return m_config;
  }

  void
  setDropObserver(DropObserver observer)
  {
    m_onDrop = std::move(observer);
  }

  uint64_t
  framesSent() const noexcept
  {
    return m_framesSent;
  }

  uint64_t
  framesDelivered() const noexcept
  {
    return m_framesDelivered;
  }

private:
  struct Reception
  {
    Time start;
    Time end;
    uint64_t frameSeq;
  };

  void
  deliver(NodeId receiver, uint64_t epoch, const Frame& frame, uint64_t frameSeq, bool lost);

private:
  Scheduler& m_scheduler;
  MediumConfig m_config;
  std::mt19937_64 m_rng;
  std::vector<RadioEndpoint*> m_endpoints;
  std::vector<std::vector<Reception>> m_receptions;
  DropObserver m_onDrop;
  uint64_t m_framesSent = 0;
  uint64_t m_framesDelivered = 0;
};

} // namespace vndn::sim

#endif // VNDN_SIM_MEDIUM_HPP
