#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ssc/hash.hpp"

namespace ssc {

// Minimal perfect hash over a fixed set of distinct 64-bit keys, built by
// hash-and-displace: keys are grouped into buckets, and each bucket gets a
// pilot value that sends all of its keys to free slots. Lookups of keys outside
// the build set return an arbitrary index in [0, size()).
class PerfectHash {
 public:
  PerfectHash() = default;

  // Returns nullopt if some bucket cannot be placed with this seed.
  static std::optional<PerfectHash> try_build(std::span<const std::uint64_t> keys, std::uint64_t seed);

  // Retries with derived seeds; throws std::runtime_error after max_attempts.
  static PerfectHash build(std::span<const std::uint64_t> keys, std::uint64_t seed = 0x5eed, int max_attempts = 16);

  std::size_t operator()(std::uint64_t key) const noexcept {
    const std::uint64_t h = mix64(key ^ seed_);
    const std::uint32_t pilot = pilots_[reduce(h, pilots_.size())];
    return reduce(mix64(h ^ pilot_mix(pilot)), size_);
  }

  std::size_t size() const noexcept { return size_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t memory_bytes() const noexcept { return pilots_.size() * sizeof(std::uint32_t); }

 private:
  static std::size_t reduce(std::uint64_t h, std::size_t n) noexcept {
    return static_cast<std::size_t>((static_cast<__uint128_t>(h) * n) >> 64);
  }
  static std::uint64_t pilot_mix(std::uint32_t pilot) noexcept { return mix64(std::uint64_t{pilot} + 0x9e3779b97f4a7c15ULL); }

  std::uint64_t seed_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint32_t> pilots_{0};
};

}  // namespace ssc
