#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace ssc {

using TokenId = std::uint32_t;

inline constexpr unsigned kMinBitsPerToken = 9;
inline constexpr unsigned kMaxBitsPerToken = 21;
inline constexpr unsigned kDefaultBitsPerToken = 16;
inline constexpr std::uint32_t kBoundedEntryLen = 16;
inline constexpr std::uint32_t kUnboundedEntryLen = std::numeric_limits<std::uint32_t>::max();

// Bytes readable past the end of any token's content. Decoders copy a fixed
// 16 bytes per token regardless of its length.
inline constexpr std::size_t kCopyWidth = 16;

enum class Variant : std::uint8_t { unbounded = 0, bounded16 = 1 };

struct Footprint {
  std::size_t total_bytes = 0;
  std::size_t data_bytes = 0;
  std::size_t offsets_bytes = 0;
};

// Token dictionary: all token contents concatenated in ID order plus an offset
// array, so token i occupies data[offsets[i], offsets[i+1]).
//
// Entries 0..255 are always the single bytes 0..255. Entries are only ever
// appended.
class Dictionary {
 public:
  // Base dictionary holding the 256 single-byte tokens.
  // Throws ConfigError unless 9 <= bits_per_token <= 21 and max_entry_len >= 2.
  Dictionary(unsigned bits_per_token, std::uint32_t max_entry_len);

  static Dictionary for_variant(Variant variant, unsigned bits_per_token = kDefaultBitsPerToken);

  // Appends a token and returns its ID. Throws CapacityError when full and
  // LengthError when bytes is empty or longer than max_entry_len().
  TokenId append(std::string_view bytes);

  // Throws LookupError when id >= size().
  std::string_view token(TokenId id) const;

  // Unchecked access for hot loops.
  std::string_view token_unchecked(TokenId id) const noexcept {
    return {reinterpret_cast<const char*>(data_.data()) + offsets_[id], offsets_[id + 1] - offsets_[id]};
  }

  std::uint32_t token_length(TokenId id) const noexcept { return offsets_[id + 1] - offsets_[id]; }

  std::size_t size() const noexcept { return offsets_.size() - 1; }
  std::size_t capacity() const noexcept { return std::size_t{1} << bits_per_token_; }
  bool full() const noexcept { return size() >= capacity(); }

  unsigned bits_per_token() const noexcept { return bits_per_token_; }
  std::uint32_t max_entry_len() const noexcept { return max_entry_len_; }
  bool bounded() const noexcept { return max_entry_len_ <= kCopyWidth; }
  Variant variant() const noexcept { return bounded() ? Variant::bounded16 : Variant::unbounded; }

  // Bytes used by one token ID in the compressed stream.
  std::size_t id_bytes() const noexcept { return (bits_per_token_ + 7) / 8; }

  // Token contents, without the trailing copy slack.
  std::span<const std::uint8_t> data() const noexcept { return {data_.data(), offsets_.back()}; }
  std::span<const std::uint32_t> offsets() const noexcept { return offsets_; }

  // Pointer to the data region; at least kCopyWidth bytes past the last
  // token are readable.
  const std::uint8_t* padded_data() const noexcept { return data_.data(); }

  std::uint32_t longest_entry() const noexcept { return longest_; }

  Footprint footprint() const noexcept;

  // 64-bit content hash over configuration, offsets and data.
  std::uint64_t content_hash() const noexcept;

  bool operator==(const Dictionary& other) const noexcept;

  // Little-endian file format:
  //   "SSDC" | version u8 | variant u8 | bits u8 | reserved u8 | entry_count u32
  //   | offsets (entry_count+1) x u32 | data
  std::vector<std::uint8_t> serialize() const;
  // Throws FormatError on any malformed or invariant-violating input.
  static Dictionary deserialize(std::span<const std::uint8_t> bytes);

 private:
  Dictionary() = default;

  unsigned bits_per_token_ = kDefaultBitsPerToken;
  std::uint32_t max_entry_len_ = kBoundedEntryLen;
  std::uint32_t longest_ = 1;
  std::vector<std::uint8_t> data_;  // content followed by kCopyWidth zero bytes
  std::vector<std::uint32_t> offsets_;
};

// Net bytes saved by a token of `length` bytes used `frequency` times, after
// the 2-byte ID per use and the stored content are paid for.
constexpr std::int64_t token_gain(std::uint64_t length, std::uint64_t frequency) noexcept {
  const auto len = static_cast<std::int64_t>(length);
  return (len - 2) * static_cast<std::int64_t>(frequency) - len;
}

}  // namespace ssc
