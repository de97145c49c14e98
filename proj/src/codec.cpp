#include "ssc/codec.hpp"

#include <algorithm>
#include <string>

#include "ssc/byte_io.hpp"

namespace ssc {

namespace {

constexpr std::string_view kMagic = "SSCC";
constexpr std::uint8_t kFormatVersion = 1;

void check_index(const CompressedColumn& column, std::size_t i) {
  if (i >= column.size()) {
    throw LookupError("string index " + std::to_string(i) + " out of range (size " + std::to_string(column.size()) +
                      ")");
  }
}

}  // namespace

std::vector<TokenId> CompressedColumn::string_tokens(std::size_t i) const {
  std::vector<TokenId> out;
  for (std::uint64_t k = string_offsets_[i]; k < string_offsets_[i + 1]; ++k) out.push_back(token(k));
  return out;
}

void CompressedColumn::check_pairing(const Dictionary& dict) const {
  if (dict.content_hash() != dict_hash_) {
    throw FormatError("compressed column was produced with a different dictionary");
  }
  const bool ok = visit_tokens([&](auto tokens) {
    return std::all_of(tokens.begin(), tokens.end(), [&](auto t) { return t < dict.size(); });
  });
  if (!ok) throw FormatError("compressed column references token IDs outside the dictionary");
}

std::vector<std::uint8_t> CompressedColumn::serialize() const {
  if (wide_) throw FormatError("columns with more than 16-bit token IDs cannot be serialized");
  std::vector<std::uint8_t> out;
  out.reserve(4 + 1 + 16 + 8 * string_offsets_.size() + 2 * narrow_tokens_.size() + 8);
  detail::ByteWriter w(out);
  w.bytes(kMagic);
  w.le<std::uint8_t>(kFormatVersion);
  w.le<std::uint64_t>(size());
  w.le<std::uint64_t>(token_count());
  for (std::uint64_t o : string_offsets_) w.le<std::uint64_t>(o);
  for (std::uint16_t t : narrow_tokens_) w.le<std::uint16_t>(t);
  w.le<std::uint64_t>(dict_hash_);
  return out;
}

CompressedColumn CompressedColumn::deserialize(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "compressed column");
  auto magic = r.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) r.fail("bad magic");
  if (r.le<std::uint8_t>() != kFormatVersion) r.fail("unsupported format version");
  const auto n_strings = r.le<std::uint64_t>();
  const auto token_count = r.le<std::uint64_t>();
  // Exact size check before allocating anything.
  if (n_strings >= r.remaining() / 8 || token_count > r.remaining() / 2 ||
      r.remaining() != 8 * (n_strings + 1) + 2 * token_count + 8) {
    r.fail("size does not match header");
  }
  CompressedColumn c;
  c.string_offsets_.resize(n_strings + 1);
  for (auto& o : c.string_offsets_) o = r.le<std::uint64_t>();
  if (c.string_offsets_.front() != 0) r.fail("string_offsets[0] must be 0");
  if (!std::is_sorted(c.string_offsets_.begin(), c.string_offsets_.end())) r.fail("string offsets decrease");
  if (c.string_offsets_.back() != token_count) r.fail("last string offset must equal token count");
  c.narrow_tokens_.resize(token_count);
  for (auto& t : c.narrow_tokens_) t = r.le<std::uint16_t>();
  c.dict_hash_ = r.le<std::uint64_t>();
  return c;
}

std::size_t decompress_token(const Dictionary& dict, TokenId id, DecodeBuffer& out, std::size_t pos) {
  const std::size_t len = dict.token(id).size();
  std::uint8_t* base = out.reserve(pos + std::max<std::size_t>(len, kCopyWidth));
  return dict.bounded() ? detail::copy_token<true>(dict.padded_data(), dict.offsets().data(), id, base + pos)
                        : detail::copy_token<false>(dict.padded_data(), dict.offsets().data(), id, base + pos);
}

std::size_t decoded_length(const Dictionary& dict, const CompressedColumn& column, std::size_t i) {
  check_index(column, i);
  std::size_t total = 0;
  for (std::uint64_t k = column.string_offsets()[i]; k < column.string_offsets()[i + 1]; ++k) {
    total += dict.token_length(column.token(k));
  }
  return total;
}

std::size_t max_decoded_length(const Dictionary& dict, const CompressedColumn& column) {
  std::size_t longest = 0;
  const auto offsets = column.string_offsets();
  column.visit_tokens([&](auto tokens) {
    for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
      std::size_t total = 0;
      for (std::uint64_t k = offsets[i]; k < offsets[i + 1]; ++k) total += dict.token_length(tokens[k]);
      longest = std::max(longest, total);
    }
  });
  return longest;
}

std::string decompress_string(const Dictionary& dict, const CompressedColumn& column, std::size_t i) {
  const std::size_t len = decoded_length(dict, column, i);
  std::string out(len + kCopyWidth, '\0');
  const std::size_t written = decompress_string_into(dict, column, i, reinterpret_cast<std::uint8_t*>(out.data()));
  out.resize(written);
  return out;
}

namespace {

template <bool Bounded, typename Code>
std::size_t decode_column(const Dictionary& dict, std::span<const Code> tokens, std::span<const std::uint64_t> offsets,
                          std::uint8_t* out, std::uint64_t* ends) noexcept {
  const std::uint8_t* data = dict.padded_data();
  const std::uint32_t* dict_offsets = dict.offsets().data();
  std::uint8_t* const start = out;
  for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
    for (std::uint64_t k = offsets[i]; k < offsets[i + 1]; ++k) {
      out += detail::copy_token<Bounded>(data, dict_offsets, tokens[k], out);
    }
    ends[i] = static_cast<std::uint64_t>(out - start);
  }
  return static_cast<std::size_t>(out - start);
}

}  // namespace

std::size_t total_decoded_length(const Dictionary& dict, const CompressedColumn& column) {
  std::size_t total = 0;
  column.visit_tokens([&](auto tokens) {
    for (auto t : tokens) total += dict.token_length(t);
  });
  return total;
}

std::size_t decompress_all_into(const Dictionary& dict, const CompressedColumn& column, std::uint8_t* out,
                                std::uint64_t* ends) noexcept {
  return column.visit_tokens([&](auto tokens) {
    return dict.bounded() ? decode_column<true>(dict, tokens, column.string_offsets(), out, ends)
                          : decode_column<false>(dict, tokens, column.string_offsets(), out, ends);
  });
}

Corpus decompress_all(const Dictionary& dict, const CompressedColumn& column) {
  const std::size_t total = total_decoded_length(dict, column);
  std::string bytes(total + kCopyWidth, '\0');
  std::vector<std::uint64_t> boundaries(column.size() + 1, 0);
  decompress_all_into(dict, column, reinterpret_cast<std::uint8_t*>(bytes.data()), boundaries.data() + 1);
  bytes.resize(total);
  return Corpus::from_parts(std::move(bytes), std::move(boundaries), "decompressed");
}

Codec::Codec(Dictionary dict) : dict_(std::move(dict)), dynamic_(DynamicMatcher::for_dictionary(dict_)) {
  if (dict_.bounded()) static_ = StaticMatcher::finalize(dynamic_);
}

Codec::Codec(Dictionary dict, DynamicMatcher matcher) : dict_(std::move(dict)), dynamic_(std::move(matcher)) {
  if (dict_.bounded()) static_ = StaticMatcher::finalize(dynamic_);
}

std::vector<TokenId> Codec::compress_string(std::string_view bytes) const {
  return static_ ? ssc::compress_string(*static_, bytes) : ssc::compress_string(dynamic_, bytes);
}

CompressedColumn Codec::compress(const Corpus& strings) const {
  return static_ ? compress_column(*static_, dict_, strings) : compress_column(dynamic_, dict_, strings);
}

}  // namespace ssc
