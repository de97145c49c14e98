#pragma once

// Reference implementations used by the tests. Deliberately naive: they work
// on plain byte strings and never touch the packed-word or hashing code paths.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ssc/dictionary.hpp"
#include "ssc/lpm.hpp"
#include "ssc/rng.hpp"

namespace oracle {

inline bool byte_prefix(std::string_view prefix, std::string_view s) {
  return prefix.size() <= s.size() && std::equal(prefix.begin(), prefix.end(), s.begin());
}

// Number of equal leading bytes of two strings of at most 8 bytes, counting
// the zero padding up to 8 the way a packed word does.
inline unsigned shared_prefix(std::string_view a, std::string_view b) {
  unsigned n = 0;
  while (n < 8) {
    const char ca = n < a.size() ? a[n] : '\0';
    const char cb = n < b.size() ? b[n] : '\0';
    if (ca != cb) break;
    ++n;
  }
  return n;
}

// Longest entry of `dict` that prefixes `input`, by linear scan.
inline ssc::Match longest_prefix(const ssc::Dictionary& dict, std::string_view input) {
  ssc::Match best{0, 0};
  for (std::size_t id = 0; id < dict.size(); ++id) {
    const std::string_view e = dict.token_unchecked(static_cast<ssc::TokenId>(id));
    if (e.size() > best.length && byte_prefix(e, input)) best = {static_cast<ssc::TokenId>(id), static_cast<std::uint32_t>(e.size())};
  }
  return best;
}

inline std::string random_bytes(ssc::Rng& rng, std::size_t len, unsigned alphabet, std::uint8_t first) {
  std::string s(len, '\0');
  for (auto& c : s) c = static_cast<char>(first + rng.below(alphabet));
  return s;
}

// Random dictionary with unique entries of length 2..max_len over a small
// alphabet (zero byte included when first == 0). Some entries extend earlier
// ones so that nested prefixes and shared 8-byte buckets actually occur.
inline ssc::Dictionary random_dictionary(ssc::Rng& rng, std::size_t extra_entries, std::uint32_t max_len,
                                         unsigned alphabet, std::uint8_t first, unsigned bits = 16) {
  ssc::Dictionary dict(bits, max_len == 16 ? ssc::kBoundedEntryLen : ssc::kUnboundedEntryLen);
  std::set<std::string> seen;
  std::vector<std::string> entries;
  std::size_t attempts = 0;
  while (entries.size() < extra_entries && !dict.full() && attempts++ < extra_entries * 20) {
    std::string e;
    if (!entries.empty() && rng.chance(0.5)) {
      e = entries[rng.below(entries.size())];
      if (e.size() >= max_len) continue;
      e += random_bytes(rng, 1 + rng.below(std::min<std::uint64_t>(4, max_len - e.size())), alphabet, first);
    } else {
      e = random_bytes(rng, 2 + rng.below(max_len - 1), alphabet, first);
    }
    if (e.size() > max_len || !seen.insert(e).second) continue;
    entries.push_back(e);
    dict.append(e);
  }
  return dict;
}

// Input that often starts with (part of) a dictionary entry.
inline std::string random_probe(ssc::Rng& rng, const ssc::Dictionary& dict, unsigned alphabet, std::uint8_t first) {
  std::string s;
  if (rng.chance(0.7)) {
    s = std::string(dict.token_unchecked(static_cast<ssc::TokenId>(rng.below(dict.size()))));
    if (rng.chance(0.3) && s.size() > 1) s.resize(1 + rng.below(s.size()));
  }
  s += random_bytes(rng, rng.below(24), alphabet, first);
  if (s.empty()) s = random_bytes(rng, 1, alphabet, first);
  return s;
}

}  // namespace oracle
