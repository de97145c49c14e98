#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "ssc/dictionary.hpp"
#include "ssc/packed_word.hpp"
#include "ssc/perfect_hash.hpp"
#include "ssc/short_table.hpp"

namespace ssc {

inline constexpr std::size_t kMaxBucketSize = 128;
inline constexpr std::size_t kUnlimitedBucketSize = 0;
inline constexpr std::size_t kInlineSuffixes = 2;

struct Match {
  TokenId id = 0;
  std::uint32_t length = 0;

  friend bool operator==(const Match&, const Match&) = default;
};

namespace detail {

inline std::uint64_t load_prefix8(std::string_view in) noexcept {
  std::uint64_t w;
  std::memcpy(&w, in.data(), 8);
  return w;
}

// Probe lengths min(len, 8) down to 2. Every single byte is a token, so the
// last step needs no lookup.
inline Match search_short(const ShortTable& map, std::string_view input) noexcept {
  const PackedWord head = pack_prefix(input);
  for (unsigned len = head.len; len > 1; --len) {
    const auto* slot = map.find(head.word & low_bytes_mask(len), static_cast<std::uint8_t>(len));
    if (slot != nullptr) return {slot->id, len};
  }
  return {static_cast<std::uint8_t>(input[0]), 1};
}

}  // namespace detail

// Mutable longest-prefix matcher used during training (and for parsing with
// the unbounded variant).
//
// Patterns of up to 8 bytes live in a hash map keyed by (packed word, length).
// Longer patterns are grouped by their first 8 bytes; each group (bucket) holds
// the remaining suffixes sorted by non-increasing length, ties in insertion
// order, so the first hit in a bucket scan is the longest.
class DynamicMatcher {
 public:
  struct Suffix {
    PackedWord head;   // first min(len, 8) bytes of the suffix
    std::uint32_t len;
    TokenId id;
    std::string tail;  // bytes past the first 8 (unbounded variant only)
  };

  enum class InsertResult { inserted, duplicate, bucket_full, too_long };

  // max_bucket_size == kUnlimitedBucketSize disables the cap.
  DynamicMatcher(std::uint32_t max_entry_len, std::size_t max_bucket_size);

  // Matcher over every entry of `dict`; the bounded variant caps buckets at
  // kMaxBucketSize. Throws ConfigError if the dictionary cannot be represented
  // (duplicate entries or an overfull bucket).
  static DynamicMatcher for_dictionary(const Dictionary& dict);

  // Pure check of what insert() would return.
  InsertResult check_insert(std::string_view bytes) const;
  InsertResult insert(std::string_view bytes, TokenId id);

  std::optional<TokenId> find(std::string_view bytes) const;

  // Longest entry that prefixes `input`. input must be non-empty.
  Match search(std::string_view input) const noexcept {
    if (input.size() > 8) {
      auto it = buckets_.find(detail::load_prefix8(input));
      if (it != buckets_.end()) {
        const std::string_view rest = input.substr(8);
        const PackedWord rest_head = pack_prefix(rest);
        for (const Suffix& s : it->second) {
          if (s.len <= 8) {
            if (is_prefix(rest_head, s.head)) return {s.id, 8 + s.len};
          } else if (rest.size() >= s.len && rest_head.word == s.head.word &&
                     std::memcmp(rest.data() + 8, s.tail.data(), s.len - 8) == 0) {
            return {s.id, 8 + s.len};
          }
        }
      }
    }
    return detail::search_short(short_, input);
  }

  std::size_t size() const noexcept { return short_.size() + long_count_; }
  std::size_t bucket_count() const noexcept { return buckets_.size(); }
  std::uint32_t max_entry_len() const noexcept { return max_entry_len_; }
  std::size_t max_bucket_size() const noexcept { return max_bucket_size_; }

  // Suffixes of the bucket keyed by `prefix` (8 packed bytes), or null.
  const std::vector<Suffix>* bucket(std::uint64_t prefix) const;

  template <typename F>
  void for_each_bucket(F&& f) const {
    for (const auto& [prefix, suffixes] : buckets_) f(prefix, suffixes);
  }

  const detail::ShortTable& short_patterns() const noexcept { return short_; }

 private:
  std::uint32_t max_entry_len_;
  std::size_t max_bucket_size_;
  std::size_t long_count_ = 0;
  detail::ShortTable short_;
  absl::flat_hash_map<std::uint64_t, std::vector<Suffix>> buckets_;
};

// Read-only matcher for the bounded variant. Long-pattern prefixes go through
// a minimal perfect hash to a cache-line-sized record that carries the two
// longest suffixes inline; any further suffixes sit in a shared overflow array.
class StaticMatcher {
 public:
  static constexpr std::uint32_t kNoOverflow = 0xffffffffu;

  struct alignas(64) BucketInfo {
    std::uint64_t prefix = 0;
    std::uint64_t inline_suffix[kInlineSuffixes] = {};
    TokenId inline_id[kInlineSuffixes] = {};
    std::uint32_t overflow_offset = kNoOverflow;
    std::uint16_t overflow_size = 0;
    std::uint8_t inline_len[kInlineSuffixes] = {};
    std::uint8_t inline_count = 0;
  };
  static_assert(sizeof(BucketInfo) == 64);

  struct OverflowSuffix {
    std::uint64_t suffix;
    TokenId id;
    std::uint8_t len;
  };

  // Throws ConfigError if the matcher allows entries longer than 16 bytes or
  // buckets too large for the 16-bit overflow size; std::runtime_error if
  // the perfect hash cannot be built.
  static StaticMatcher finalize(const DynamicMatcher& dynamic, std::uint64_t seed = 0x5eed);

  Match search(std::string_view input) const noexcept {
    if (input.size() > 8 && !infos_.empty()) {
      const std::uint64_t prefix = detail::load_prefix8(input);
      const BucketInfo& info = infos_[phf_(prefix)];
      if (info.prefix == prefix) {
        const PackedWord rest = pack_prefix(input.substr(8));
        for (unsigned i = 0; i < info.inline_count; ++i) {
          if (is_prefix(rest, PackedWord{info.inline_suffix[i], info.inline_len[i]})) {
            return {info.inline_id[i], 8u + info.inline_len[i]};
          }
        }
        if (info.overflow_size != 0) {
          const OverflowSuffix* it = overflow_.data() + info.overflow_offset;
          const OverflowSuffix* end = it + info.overflow_size;
          for (; it != end; ++it) {
            if (is_prefix(rest, PackedWord{it->suffix, it->len})) return {it->id, 8u + it->len};
          }
        }
      }
    }
    return detail::search_short(short_, input);
  }

  // Record for `prefix`, or null if it is not a stored long-pattern prefix.
  const BucketInfo* bucket_info(std::uint64_t prefix) const noexcept;

  const std::vector<BucketInfo>& bucket_infos() const noexcept { return infos_; }
  const std::vector<OverflowSuffix>& overflow() const noexcept { return overflow_; }
  const PerfectHash& perfect_hash() const noexcept { return phf_; }
  std::size_t memory_bytes() const noexcept;

 private:
  PerfectHash phf_;
  std::vector<BucketInfo> infos_;
  std::vector<OverflowSuffix> overflow_;
  detail::ShortTable short_;
};

}  // namespace ssc
