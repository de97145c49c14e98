#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssc/corpus.hpp"
#include "ssc/dictionary.hpp"
#include "ssc/error.hpp"
#include "ssc/lpm.hpp"

namespace ssc {

// Token IDs of every string, concatenated, plus per-string start indices.
// IDs are held in 16-bit slots when the dictionary has at most 2^16 entries
// and in 32-bit slots otherwise.
class CompressedColumn {
 public:
  CompressedColumn() = default;
  CompressedColumn(bool wide, std::uint64_t dictionary_hash) : wide_(wide), dict_hash_(dictionary_hash) {}

  std::size_t size() const noexcept { return string_offsets_.size() - 1; }
  std::size_t token_count() const noexcept { return wide_ ? wide_tokens_.size() : narrow_tokens_.size(); }
  bool wide() const noexcept { return wide_; }
  std::uint64_t dictionary_hash() const noexcept { return dict_hash_; }
  std::span<const std::uint64_t> string_offsets() const noexcept { return string_offsets_; }

  std::span<const std::uint16_t> narrow_tokens() const noexcept { return narrow_tokens_; }
  std::span<const std::uint32_t> wide_tokens() const noexcept { return wide_tokens_; }

  TokenId token(std::size_t k) const noexcept { return wide_ ? wide_tokens_[k] : narrow_tokens_[k]; }

  // Token IDs of string i as a vector (convenience, not for hot loops).
  std::vector<TokenId> string_tokens(std::size_t i) const;

  // Calls f with a span over the token array of the active width.
  template <typename F>
  decltype(auto) visit_tokens(F&& f) const {
    if (wide_) return f(std::span<const std::uint32_t>(wide_tokens_));
    return f(std::span<const std::uint16_t>(narrow_tokens_));
  }

  void append_token(TokenId id) {
    if (wide_) {
      wide_tokens_.push_back(id);
    } else {
      narrow_tokens_.push_back(static_cast<std::uint16_t>(id));
    }
  }
  void end_string() { string_offsets_.push_back(token_count()); }

  // Calls f with the mutable token vector of the active width.
  template <typename F>
  void edit_tokens(F&& f) {
    if (wide_) {
      f(wide_tokens_);
    } else {
      f(narrow_tokens_);
    }
  }

  // Throws FormatError if the column was not produced with `dict` or refers
  // to IDs outside it.
  void check_pairing(const Dictionary& dict) const;

  // Little-endian file format:
  //   "SSCC" | version u8 | n_strings u64 | token_count u64
  //   | string_offsets (n_strings+1) x u64 | tokens token_count x u16
  //   | dictionary content hash u64
  // Only 16-bit columns can be written; wide columns throw FormatError.
  std::vector<std::uint8_t> serialize() const;
  static CompressedColumn deserialize(std::span<const std::uint8_t> bytes);

  friend bool operator==(const CompressedColumn&, const CompressedColumn&) = default;

 private:
  bool wide_ = false;
  std::uint64_t dict_hash_ = 0;
  std::vector<std::uint16_t> narrow_tokens_;
  std::vector<std::uint32_t> wide_tokens_;
  std::vector<std::uint64_t> string_offsets_{0};
};

// Output region for decoding. Every decode may write up to kCopyWidth bytes
// past the decoded content, so the buffer keeps that much slack beyond the
// requested size.
class DecodeBuffer {
 public:
  DecodeBuffer() = default;
  explicit DecodeBuffer(std::size_t max_string_len) { reserve(max_string_len); }

  // Ensures room for a string of `len` bytes plus slack; returns the start.
  std::uint8_t* reserve(std::size_t len) {
    if (bytes_.size() < len + kCopyWidth) bytes_.resize(len + kCopyWidth);
    return bytes_.data();
  }
  std::uint8_t* data() noexcept { return bytes_.data(); }
  std::size_t capacity() const noexcept { return bytes_.size() < kCopyWidth ? 0 : bytes_.size() - kCopyWidth; }
  std::string_view view(std::size_t len) const noexcept {
    return {reinterpret_cast<const char*>(bytes_.data()), len};
  }

 private:
  std::vector<std::uint8_t> bytes_;
};

namespace detail {

// Writes token `id` at `out` and returns its length. Writes kCopyWidth bytes
// unconditionally; tokens longer than that get a second copy for the rest.
template <bool Bounded>
inline std::size_t copy_token(const std::uint8_t* data, const std::uint32_t* offsets, TokenId id,
                              std::uint8_t* out) noexcept {
  const std::uint32_t start = offsets[id];
  const std::uint32_t length = offsets[id + 1] - start;
  std::memcpy(out, data + start, kCopyWidth);
  if constexpr (!Bounded) {
    if (length > kCopyWidth) std::memcpy(out + kCopyWidth, data + start + kCopyWidth, length - kCopyWidth);
  }
  return length;
}

template <bool Bounded, typename Code>
inline std::size_t decode_tokens(const Dictionary& dict, std::span<const Code> tokens, std::uint8_t* out) noexcept {
  const std::uint8_t* data = dict.padded_data();
  const std::uint32_t* offsets = dict.offsets().data();
  std::uint8_t* cursor = out;
  for (Code code : tokens) cursor += copy_token<Bounded>(data, offsets, code, cursor);
  return static_cast<std::size_t>(cursor - out);
}

template <typename Matcher, typename Code>
inline void parse_into(const Matcher& matcher, std::string_view s, std::vector<Code>& out) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    const Match m = matcher.search(std::string_view(s.data() + pos, s.size() - pos));
    out.push_back(static_cast<Code>(m.id));
    pos += m.length;
  }
}

}  // namespace detail

// Greedy longest-prefix tokenization of one string.
template <typename Matcher>
std::vector<TokenId> compress_string(const Matcher& matcher, std::string_view bytes) {
  std::vector<TokenId> out;
  detail::parse_into(matcher, bytes, out);
  return out;
}

// Each string compressed independently.
template <typename Matcher>
CompressedColumn compress_column(const Matcher& matcher, const Dictionary& dict, const Corpus& strings) {
  CompressedColumn column(dict.capacity() > 65536, dict.content_hash());
  column.edit_tokens([&](auto& tokens) {
    tokens.reserve(strings.total_bytes() / 3 + 1);
    for (std::size_t i = 0; i < strings.size(); ++i) {
      detail::parse_into(matcher, strings[i], tokens);
      column.end_string();
    }
  });
  return column;
}

// Writes token `id` into `out` starting at `pos` and returns its length. The
// buffer must hold pos + kCopyWidth bytes past the token's length.
std::size_t decompress_token(const Dictionary& dict, TokenId id, DecodeBuffer& out, std::size_t pos = 0);

// Decoded length of string i without decoding it.
std::size_t decoded_length(const Dictionary& dict, const CompressedColumn& column, std::size_t i);

// Longest decoded string in the column; sizes a reusable DecodeBuffer.
std::size_t max_decoded_length(const Dictionary& dict, const CompressedColumn& column);

// Decodes string i into `out`, which must already hold the string plus slack
// (see max_decoded_length). Unchecked: i must be < column.size().
inline std::size_t decompress_string_into(const Dictionary& dict, const CompressedColumn& column, std::size_t i,
                                          std::uint8_t* out) noexcept {
  const std::uint64_t begin = column.string_offsets()[i];
  const std::uint64_t end = column.string_offsets()[i + 1];
  return column.visit_tokens([&](auto tokens) {
    auto slice = tokens.subspan(begin, end - begin);
    return dict.bounded() ? detail::decode_tokens<true>(dict, slice, out) : detail::decode_tokens<false>(dict, slice, out);
  });
}

// Throws LookupError when i >= column.size().
std::string decompress_string(const Dictionary& dict, const CompressedColumn& column, std::size_t i);

// Sum of the decoded lengths of all strings.
std::size_t total_decoded_length(const Dictionary& dict, const CompressedColumn& column);

// Decodes every string back to back into `out`, which must hold
// total_decoded_length() + kCopyWidth bytes, and stores the end offset of
// string i in ends[i]. Returns the number of bytes decoded.
std::size_t decompress_all_into(const Dictionary& dict, const CompressedColumn& column, std::uint8_t* out,
                                std::uint64_t* ends) noexcept;

// All strings, in order, as a corpus.
Corpus decompress_all(const Dictionary& dict, const CompressedColumn& column);

// A dictionary together with the matcher used to parse with it: the static
// matcher for the bounded variant, the dynamic one otherwise.
class Codec {
 public:
  explicit Codec(Dictionary dict);
  Codec(Dictionary dict, DynamicMatcher matcher);

  const Dictionary& dictionary() const noexcept { return dict_; }
  const DynamicMatcher& dynamic_matcher() const noexcept { return dynamic_; }
  const StaticMatcher* static_matcher() const noexcept { return static_ ? &*static_ : nullptr; }

  Match search(std::string_view input) const noexcept {
    return static_ ? static_->search(input) : dynamic_.search(input);
  }

  std::vector<TokenId> compress_string(std::string_view bytes) const;
  CompressedColumn compress(const Corpus& strings) const;
  std::string decompress_string(const CompressedColumn& column, std::size_t i) const {
    return ssc::decompress_string(dict_, column, i);
  }
  Corpus decompress_all(const CompressedColumn& column) const { return ssc::decompress_all(dict_, column); }

 private:
  Dictionary dict_;
  DynamicMatcher dynamic_;
  std::optional<StaticMatcher> static_;
};

}  // namespace ssc
