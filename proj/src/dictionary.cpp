#include "ssc/dictionary.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "ssc/byte_io.hpp"
#include "ssc/error.hpp"
#include "ssc/hash.hpp"

namespace ssc {

namespace {

constexpr std::string_view kMagic = "SSDC";
constexpr std::uint8_t kFormatVersion = 1;

void check_config(unsigned bits_per_token, std::uint32_t max_entry_len) {
  if (bits_per_token < kMinBitsPerToken || bits_per_token > kMaxBitsPerToken) {
    throw ConfigError("bits_per_token must be in [9, 21], got " + std::to_string(bits_per_token));
  }
  if (max_entry_len < 2) {
    throw ConfigError("max_entry_len must be at least 2, got " + std::to_string(max_entry_len));
  }
}

}  // namespace

Dictionary::Dictionary(unsigned bits_per_token, std::uint32_t max_entry_len)
    : bits_per_token_(bits_per_token), max_entry_len_(max_entry_len) {
  check_config(bits_per_token, max_entry_len);
  data_.resize(256 + kCopyWidth, 0);
  offsets_.resize(257);
  for (std::uint32_t i = 0; i < 256; ++i) {
    data_[i] = static_cast<std::uint8_t>(i);
    offsets_[i] = i;
  }
  offsets_[256] = 256;
}

Dictionary Dictionary::for_variant(Variant variant, unsigned bits_per_token) {
  return {bits_per_token, variant == Variant::bounded16 ? kBoundedEntryLen : kUnboundedEntryLen};
}

TokenId Dictionary::append(std::string_view bytes) {
  if (full()) {
    throw CapacityError("dictionary is full (" + std::to_string(capacity()) + " entries)");
  }
  if (bytes.empty() || bytes.size() > max_entry_len_) {
    throw LengthError("token length " + std::to_string(bytes.size()) + " outside [1, " +
                      std::to_string(max_entry_len_) + "]");
  }
  const std::uint32_t end = offsets_.back();
  if (bytes.size() > std::numeric_limits<std::uint32_t>::max() - end) {
    throw CapacityError("dictionary data region exceeds 4 GiB");
  }
  data_.resize(end);
  data_.insert(data_.end(), bytes.begin(), bytes.end());
  data_.resize(data_.size() + kCopyWidth, 0);
  offsets_.push_back(end + static_cast<std::uint32_t>(bytes.size()));
  longest_ = std::max(longest_, static_cast<std::uint32_t>(bytes.size()));
  return static_cast<TokenId>(size() - 1);
}

std::string_view Dictionary::token(TokenId id) const {
  if (id >= size()) {
    throw LookupError("token id " + std::to_string(id) + " out of range (size " + std::to_string(size()) + ")");
  }
  return token_unchecked(id);
}

Footprint Dictionary::footprint() const noexcept {
  Footprint f;
  f.data_bytes = offsets_.back();
  f.offsets_bytes = sizeof(std::uint32_t) * offsets_.size();
  f.total_bytes = f.data_bytes + f.offsets_bytes;
  return f;
}

std::uint64_t Dictionary::content_hash() const noexcept {
  Fnv1a64 h;
  h.update_u64(bits_per_token_);
  h.update_u64(max_entry_len_);
  h.update_u64(offsets_.size());
  for (std::uint32_t o : offsets_) h.update_u64(o);
  h.update(data());
  return h.digest();
}

bool Dictionary::operator==(const Dictionary& other) const noexcept {
  return bits_per_token_ == other.bits_per_token_ && max_entry_len_ == other.max_entry_len_ &&
         offsets_ == other.offsets_ && std::ranges::equal(data(), other.data());
}

std::vector<std::uint8_t> Dictionary::serialize() const {
  if (max_entry_len_ != kBoundedEntryLen && max_entry_len_ != kUnboundedEntryLen) {
    throw FormatError("only the bounded-16 and unbounded variants can be serialized");
  }
  std::vector<std::uint8_t> out;
  out.reserve(12 + 4 * offsets_.size() + offsets_.back());
  detail::ByteWriter w(out);
  w.bytes(kMagic);
  w.le<std::uint8_t>(kFormatVersion);
  w.le<std::uint8_t>(static_cast<std::uint8_t>(variant()));
  w.le<std::uint8_t>(static_cast<std::uint8_t>(bits_per_token_));
  w.le<std::uint8_t>(0);
  w.le<std::uint32_t>(static_cast<std::uint32_t>(size()));
  for (std::uint32_t o : offsets_) w.le<std::uint32_t>(o);
  w.bytes(data());
  return out;
}

Dictionary Dictionary::deserialize(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "dictionary");
  auto magic = r.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) r.fail("bad magic");
  if (r.le<std::uint8_t>() != kFormatVersion) r.fail("unsupported format version");
  const auto variant = r.le<std::uint8_t>();
  if (variant > 1) r.fail("unknown variant " + std::to_string(variant));
  const unsigned bits = r.le<std::uint8_t>();
  if (bits < kMinBitsPerToken || bits > kMaxBitsPerToken) r.fail("bits_per_token out of range");
  if (r.le<std::uint8_t>() != 0) r.fail("reserved byte must be zero");
  const auto entry_count = r.le<std::uint32_t>();
  if (entry_count < 256 || entry_count > (std::uint64_t{1} << bits)) r.fail("entry count out of range");

  Dictionary d;
  d.bits_per_token_ = bits;
  d.max_entry_len_ = variant == 1 ? kBoundedEntryLen : kUnboundedEntryLen;
  if (r.remaining() / 4 < std::size_t{entry_count} + 1) r.fail("truncated");
  d.offsets_.resize(std::size_t{entry_count} + 1);
  for (auto& o : d.offsets_) o = r.le<std::uint32_t>();
  if (d.offsets_[0] != 0) r.fail("offsets[0] must be 0");
  for (std::size_t i = 0; i < entry_count; ++i) {
    if (d.offsets_[i + 1] <= d.offsets_[i]) r.fail("offsets not strictly increasing at entry " + std::to_string(i));
    const std::uint32_t len = d.offsets_[i + 1] - d.offsets_[i];
    if (len > d.max_entry_len_) r.fail("entry " + std::to_string(i) + " exceeds max entry length");
    d.longest_ = std::max(d.longest_, len);
  }
  if (d.offsets_[256] != 256) r.fail("base entries must be single bytes");
  auto data = r.bytes(d.offsets_.back());
  if (r.remaining() != 0) r.fail("trailing bytes");
  for (std::size_t i = 0; i < 256; ++i) {
    if (data[i] != i) r.fail("base entry " + std::to_string(i) + " is not the identity byte");
  }
  d.data_.assign(data.begin(), data.end());
  d.data_.resize(d.data_.size() + kCopyWidth, 0);
  return d;
}

}  // namespace ssc
