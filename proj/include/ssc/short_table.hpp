#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ssc/dictionary.hpp"

namespace ssc::detail {

// Open-addressing map from (packed word, length) to token ID for patterns of
// 1..8 bytes. Linear probing, load factor at most 1/2, no deletion.
class ShortTable {
 public:
  struct Slot {
    std::uint64_t word = 0;
    TokenId id = 0;
    std::uint8_t len = 0;  // 0 marks an empty slot
  };

  ShortTable() { rehash(1024); }

  // Returns false if the key is already present.
  bool insert(std::uint64_t word, std::uint8_t len, TokenId id) {
    if (2 * (size_ + 1) > slots_.size()) rehash(2 * slots_.size());
    Slot* s = probe(word, len);
    if (s->len != 0) return false;
    *s = {word, id, len};
    ++size_;
    return true;
  }

  const Slot* find(std::uint64_t word, std::uint8_t len) const noexcept {
    std::size_t i = index(word, len);
    for (;;) {
      const Slot& s = slots_[i];
      if (s.len == len && s.word == word) return &s;
      if (s.len == 0) return nullptr;
      i = (i + 1) & mask_;
    }
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t memory_bytes() const noexcept { return slots_.size() * sizeof(Slot); }

  template <typename F>
  void for_each(F&& f) const {
    for (const Slot& s : slots_) {
      if (s.len != 0) f(s);
    }
  }

 private:
  std::size_t index(std::uint64_t word, std::uint8_t len) const noexcept {
    const std::uint64_t h = (word ^ (std::uint64_t{len} * 0x9e3779b97f4a7c15ULL)) * 0xff51afd7ed558ccdULL;
    return static_cast<std::size_t>(h >> shift_);
  }

  Slot* probe(std::uint64_t word, std::uint8_t len) noexcept {
    std::size_t i = index(word, len);
    while (slots_[i].len != 0 && !(slots_[i].len == len && slots_[i].word == word)) i = (i + 1) & mask_;
    return &slots_[i];
  }

  void rehash(std::size_t capacity) {
    std::vector<Slot> old = std::move(slots_);
    slots_.assign(capacity, Slot{});
    mask_ = capacity - 1;
    shift_ = 64 - static_cast<unsigned>(std::countr_zero(capacity));
    for (const Slot& s : old) {
      if (s.len != 0) *probe(s.word, s.len) = s;
    }
  }

  std::vector<Slot> slots_;
  std::size_t size_ = 0;
  std::size_t mask_ = 0;
  unsigned shift_ = 64;
};

}  // namespace ssc::detail
