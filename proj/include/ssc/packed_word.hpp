#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

#include "ssc/error.hpp"

namespace ssc {

// Up to 8 bytes of a string in one 64-bit word: byte 0 in the lowest-order
// byte, zero padding at the high end.
struct PackedWord {
  std::uint64_t word = 0;
  std::uint8_t len = 0;

  friend bool operator==(const PackedWord&, const PackedWord&) = default;
};

static_assert(std::endian::native == std::endian::little, "packed words assume a little-endian host");

// Mask keeping the low `len` bytes (len in [0, 8]).
constexpr std::uint64_t low_bytes_mask(unsigned len) noexcept {
  return len >= 8 ? ~std::uint64_t{0} : (std::uint64_t{1} << (8 * len)) - 1;
}

// Loads min(len(bytes), 8) bytes. Never reads past the end of `bytes`.
inline PackedWord pack_prefix(std::string_view bytes) noexcept {
  PackedWord p;
  p.len = static_cast<std::uint8_t>(bytes.size() < 8 ? bytes.size() : 8);
  if (p.len == 8) {
    std::memcpy(&p.word, bytes.data(), 8);
  } else if (p.len != 0) {
    std::memcpy(&p.word, bytes.data(), p.len);
  }
  return p;
}

// Throws LengthError when bytes is longer than 8.
inline PackedWord pack(std::string_view bytes) {
  if (bytes.size() > 8) throw LengthError("cannot pack more than 8 bytes");
  return pack_prefix(bytes);
}

inline std::string unpack(const PackedWord& p) {
  std::string out(p.len, '\0');
  std::memcpy(out.data(), &p.word, p.len);
  return out;
}

// First `len` bytes of p (len <= p.len).
constexpr PackedWord truncate(const PackedWord& p, unsigned len) noexcept {
  return {p.word & low_bytes_mask(len), static_cast<std::uint8_t>(len)};
}

// Number of equal low-order bytes; 8 when the words are identical.
constexpr unsigned shared_prefix_size(std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t diff = a ^ b;
  return diff == 0 ? 8u : static_cast<unsigned>(std::countr_zero(diff)) / 8;
}

constexpr unsigned shared_prefix_size(const PackedWord& a, const PackedWord& b) noexcept {
  return shared_prefix_size(a.word, b.word);
}

// True iff `prefix` is a byte prefix of `input`. The length guard rejects
// matches that only exist because of zero padding.
constexpr bool is_prefix(const PackedWord& input, const PackedWord& prefix) noexcept {
  if (prefix.len > input.len) return false;
  return shared_prefix_size(input, prefix) >= prefix.len;
}

}  // namespace ssc
