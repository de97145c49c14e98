#pragma once

#include <cstddef>
#include <string>

#include "ssc/dictionary.hpp"

namespace fixture {

inline constexpr ssc::TokenId kCad = 278;
inline constexpr ssc::TokenId kAbra = 512;
inline constexpr ssc::TokenId kAbracad = 793;
inline constexpr std::uint32_t kAbracadStart = 3769;

// Filler of the given length made of upper-case letters, unique per (len, k).
inline std::string filler(std::size_t len, std::size_t k) {
  std::string s(len, 'A');
  for (std::size_t i = len; k != 0 && i-- > 0; k /= 26) s[i] = static_cast<char>('A' + k % 26);
  return s;
}

// 793 entries: 278 = "cad", 512 = "abra", everything else upper-case filler.
// Filler lengths are picked so that the next appended entry starts at byte
// 3769 of the data region.
inline ssc::Dictionary abracad_dictionary(std::uint32_t max_len = ssc::kBoundedEntryLen) {
  ssc::Dictionary dict(16, max_len);
  std::size_t k = 0;
  for (ssc::TokenId id = 256; id < kAbracad; ++id) {
    if (id == kCad) {
      dict.append("cad");
    } else if (id == kAbra) {
      dict.append("abra");
    } else {
      dict.append(filler(k < 239 ? 6 : 7, k));
      ++k;
    }
  }
  return dict;
}

}  // namespace fixture
