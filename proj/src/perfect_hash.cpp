#include "ssc/perfect_hash.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ssc {

namespace {

constexpr double kKeysPerBucket = 2.5;
constexpr std::uint32_t kMaxPilot = 1u << 22;

}  // namespace

std::optional<PerfectHash> PerfectHash::try_build(std::span<const std::uint64_t> keys, std::uint64_t seed) {
  PerfectHash phf;
  phf.seed_ = seed;
  phf.size_ = keys.size();
  if (keys.empty()) return phf;

  const auto n_buckets = std::max<std::size_t>(1, static_cast<std::size_t>(keys.size() / kKeysPerBucket));
  phf.pilots_.assign(n_buckets, 0);

  std::vector<std::uint64_t> hashes(keys.size());
  std::vector<std::uint32_t> bucket_of(keys.size());
  std::vector<std::uint32_t> bucket_len(n_buckets, 0);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    hashes[i] = mix64(keys[i] ^ seed);
    bucket_of[i] = static_cast<std::uint32_t>(reduce(hashes[i], n_buckets));
    ++bucket_len[bucket_of[i]];
  }

  // Keys grouped by bucket (counting sort).
  std::vector<std::uint32_t> start(n_buckets + 1, 0);
  for (std::size_t b = 0; b < n_buckets; ++b) start[b + 1] = start[b] + bucket_len[b];
  std::vector<std::uint64_t> grouped(keys.size());
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < keys.size(); ++i) grouped[fill[bucket_of[i]]++] = hashes[i];
  }

  // Largest buckets first, while the table is still empty.
  std::vector<std::uint32_t> order(n_buckets);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return bucket_len[a] > bucket_len[b]; });

  std::vector<bool> taken(keys.size(), false);
  std::vector<std::size_t> slots;
  for (std::uint32_t b : order) {
    const std::uint32_t len = bucket_len[b];
    if (len == 0) break;
    bool placed = false;
    for (std::uint32_t pilot = 0; pilot < kMaxPilot && !placed; ++pilot) {
      const std::uint64_t pm = pilot_mix(pilot);
      slots.clear();
      bool ok = true;
      for (std::uint32_t k = start[b]; k < start[b] + len; ++k) {
        const std::size_t slot = reduce(mix64(grouped[k] ^ pm), keys.size());
        if (taken[slot] || std::find(slots.begin(), slots.end(), slot) != slots.end()) {
          ok = false;
          break;
        }
        slots.push_back(slot);
      }
      if (ok) {
        for (std::size_t s : slots) taken[s] = true;
        phf.pilots_[b] = pilot;
        placed = true;
      }
    }
    // Either an exhausted pilot range or duplicate keys.
    if (!placed) return std::nullopt;
  }
  return phf;
}

PerfectHash PerfectHash::build(std::span<const std::uint64_t> keys, std::uint64_t seed, int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    if (auto phf = try_build(keys, mix64(seed + static_cast<std::uint64_t>(attempt)))) return std::move(*phf);
  }
  throw std::runtime_error("perfect hash construction failed after " + std::to_string(max_attempts) + " attempts");
}

}  // namespace ssc
