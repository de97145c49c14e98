#include "ssc/lpm.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "ssc/error.hpp"

namespace ssc {

DynamicMatcher::DynamicMatcher(std::uint32_t max_entry_len, std::size_t max_bucket_size)
    : max_entry_len_(max_entry_len), max_bucket_size_(max_bucket_size) {}

DynamicMatcher DynamicMatcher::for_dictionary(const Dictionary& dict) {
  DynamicMatcher m(dict.max_entry_len(), dict.bounded() ? kMaxBucketSize : kUnlimitedBucketSize);
  for (TokenId id = 0; id < dict.size(); ++id) {
    switch (m.insert(dict.token_unchecked(id), id)) {
      case InsertResult::inserted:
        break;
      case InsertResult::duplicate:
        throw ConfigError("dictionary entry " + std::to_string(id) + " duplicates an earlier entry");
      case InsertResult::bucket_full:
        throw ConfigError("dictionary entry " + std::to_string(id) + " overflows its bucket");
      case InsertResult::too_long:
        throw ConfigError("dictionary entry " + std::to_string(id) + " is too long");
    }
  }
  return m;
}

DynamicMatcher::InsertResult DynamicMatcher::check_insert(std::string_view bytes) const {
  if (bytes.empty() || bytes.size() > max_entry_len_) return InsertResult::too_long;
  if (find(bytes)) return InsertResult::duplicate;
  if (bytes.size() > 8 && max_bucket_size_ != kUnlimitedBucketSize) {
    const auto* b = bucket(detail::load_prefix8(bytes));
    if (b != nullptr && b->size() >= max_bucket_size_) return InsertResult::bucket_full;
  }
  return InsertResult::inserted;
}

DynamicMatcher::InsertResult DynamicMatcher::insert(std::string_view bytes, TokenId id) {
  const InsertResult verdict = check_insert(bytes);
  if (verdict != InsertResult::inserted) return verdict;

  if (bytes.size() <= 8) {
    const PackedWord p = pack(bytes);
    short_.insert(p.word, p.len, id);
    return verdict;
  }

  const std::string_view rest = bytes.substr(8);
  Suffix s{pack_prefix(rest), static_cast<std::uint32_t>(rest.size()), id,
           rest.size() > 8 ? std::string(rest.substr(8)) : std::string()};
  auto& suffixes = buckets_[detail::load_prefix8(bytes)];
  // After every suffix of equal or greater length.
  auto pos = std::find_if(suffixes.begin(), suffixes.end(), [&](const Suffix& e) { return e.len < s.len; });
  suffixes.insert(pos, std::move(s));
  ++long_count_;
  return verdict;
}

std::optional<TokenId> DynamicMatcher::find(std::string_view bytes) const {
  if (bytes.empty()) return std::nullopt;
  if (bytes.size() <= 8) {
    const PackedWord p = pack(bytes);
    const auto* slot = short_.find(p.word, p.len);
    if (slot == nullptr) return std::nullopt;
    return slot->id;
  }
  const auto* suffixes = bucket(detail::load_prefix8(bytes));
  if (suffixes == nullptr) return std::nullopt;
  const std::string_view rest = bytes.substr(8);
  const PackedWord head = pack_prefix(rest);
  const std::string_view tail = rest.size() > 8 ? rest.substr(8) : std::string_view();
  for (const Suffix& s : *suffixes) {
    if (s.len != rest.size() || !(s.head == head)) continue;
    if (tail.size() == s.tail.size() && std::memcmp(tail.data(), s.tail.data(), tail.size()) == 0) return s.id;
  }
  return std::nullopt;
}

const std::vector<DynamicMatcher::Suffix>* DynamicMatcher::bucket(std::uint64_t prefix) const {
  auto it = buckets_.find(prefix);
  return it == buckets_.end() ? nullptr : &it->second;
}

StaticMatcher StaticMatcher::finalize(const DynamicMatcher& dynamic, std::uint64_t seed) {
  if (dynamic.max_entry_len() > kBoundedEntryLen) {
    throw ConfigError("static matcher requires entries of at most 16 bytes");
  }
  StaticMatcher sm;
  sm.short_ = dynamic.short_patterns();

  std::vector<std::uint64_t> prefixes;
  prefixes.reserve(dynamic.bucket_count());
  dynamic.for_each_bucket([&](std::uint64_t prefix, const auto&) { prefixes.push_back(prefix); });
  // Deterministic layout independent of hash map iteration order.
  std::sort(prefixes.begin(), prefixes.end());

  sm.phf_ = PerfectHash::build(prefixes, seed);
  sm.infos_.resize(prefixes.size());
  for (std::uint64_t prefix : prefixes) {
    const auto& suffixes = *dynamic.bucket(prefix);
    if (suffixes.size() - std::min(suffixes.size(), kInlineSuffixes) > 0xffff) {
      throw ConfigError("bucket too large for a static matcher");
    }
    BucketInfo& info = sm.infos_[sm.phf_(prefix)];
    info.prefix = prefix;
    std::size_t i = 0;
    for (; i < suffixes.size() && i < kInlineSuffixes; ++i) {
      info.inline_suffix[i] = suffixes[i].head.word;
      info.inline_len[i] = static_cast<std::uint8_t>(suffixes[i].len);
      info.inline_id[i] = suffixes[i].id;
    }
    info.inline_count = static_cast<std::uint8_t>(i);
    if (i < suffixes.size()) {
      info.overflow_offset = static_cast<std::uint32_t>(sm.overflow_.size());
      info.overflow_size = static_cast<std::uint16_t>(suffixes.size() - i);
      for (; i < suffixes.size(); ++i) {
        sm.overflow_.push_back({suffixes[i].head.word, suffixes[i].id, static_cast<std::uint8_t>(suffixes[i].len)});
      }
    }
  }
  return sm;
}

const StaticMatcher::BucketInfo* StaticMatcher::bucket_info(std::uint64_t prefix) const noexcept {
  if (infos_.empty()) return nullptr;
  const BucketInfo& info = infos_[phf_(prefix)];
  return info.prefix == prefix ? &info : nullptr;
}

std::size_t StaticMatcher::memory_bytes() const noexcept {
  return phf_.memory_bytes() + infos_.size() * sizeof(BucketInfo) + overflow_.size() * sizeof(OverflowSuffix) +
         short_.memory_bytes();
}

}  // namespace ssc
