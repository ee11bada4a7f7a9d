#ifndef VNDN_COMMON_HPP
#define VNDN_COMMON_HPP

#include <chrono>
#include <cstdint>
#include <string>

namespace vndn {

/// Simulated time since the start of a run. Integer nanoseconds keep event
/// ordering exact and reproducible.
using Time = std::chrono::nanoseconds;
using Duration = std::chrono::nanoseconds;

using std::chrono::milliseconds;
using std::chrono::seconds;

using NodeId = uint32_t;
using FaceId = uint32_t;

inline constexpr FaceId INVALID_FACE = UINT32_MAX;

constexpr double
toMilliseconds(Duration d)
{
  return std::chrono::duration<double, std::milli>(d).count();
}

constexpr double
toSeconds(Duration d)
{
  return std::chrono::duration<double>(d).count();
}

constexpr Duration
fromSeconds(double s)
{
  return std::chrono::round<Duration>(std::chrono::duration<double>(s));
}

constexpr Duration
fromMilliseconds(double ms)
{
  return std::chrono::round<Duration>(std::chrono::duration<double, std::milli>(ms));
}

} // namespace vndn

#endif // VNDN_COMMON_HPP
