#ifndef VNDN_SIM_RANDOM_HPP
#define VNDN_SIM_RANDOM_HPP

#include <cstdint>

namespace vndn::sim {

/// SplitMix64 finalizer; derives independent stream seeds from a run seed.
constexpr uint64_t
mixSeed(uint64_t seed, uint64_t stream)
{
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Named streams so that adding a consumer of randomness does not shift the others.
enum class Stream : uint64_t {
  Mobility = 1,
  Medium = 2,
  Apps = 3,
  NodeBase = 1000,
};

constexpr uint64_t
streamSeed(uint64_t seed, Stream stream, uint64_t index = 0)
{
  return mixSeed(seed, static_cast<uint64_t>(stream) + index);
}

} // namespace vndn::sim

#endif // VNDN_SIM_RANDOM_HPP
