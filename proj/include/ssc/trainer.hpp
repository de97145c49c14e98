#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "ssc/corpus.hpp"
#include "ssc/dictionary.hpp"
#include "ssc/lpm.hpp"

namespace ssc {

inline constexpr std::size_t kDefaultSampleBytes = std::size_t{8} << 20;
inline constexpr std::uint32_t kMinThreshold = 2;

struct TrainerConfig {
  Variant variant = Variant::bounded16;
  unsigned bits_per_token = kDefaultBitsPerToken;
  // When unset the threshold follows the corpus size (compute_threshold).
  std::optional<std::uint32_t> threshold;
  std::size_t sample_bytes = kDefaultSampleBytes;
  std::uint64_t seed = 42;

  // Throws ConfigError on out-of-range bits or a threshold below 2.
  void validate() const;
};

enum class StopReason { dictionary_full, sample_exhausted };

std::string_view to_string(StopReason reason) noexcept;

struct TrainingReport {
  std::size_t tokens_created = 0;
  std::size_t entry_count = 0;
  std::size_t bytes_consumed = 0;
  std::size_t strings_consumed = 0;
  std::size_t sample_bytes = 0;
  std::size_t sample_strings = 0;
  std::uint32_t threshold = 0;
  double wall_time_s = 0;
  StopReason stop_reason = StopReason::sample_exhausted;

  // key=value lines, one field per line.
  std::string to_key_value() const;
};

// max(2, floor(log2(dataset_size_mib))).
std::uint32_t compute_threshold(double dataset_size_mib) noexcept;

// Indices of a random subset of strings in random order: the corpus is shuffled
// and strings are taken until their total size reaches sample_bytes.
// Deterministic for a given seed.
std::vector<std::size_t> sample_strings(const Corpus& corpus, std::size_t sample_bytes, std::uint64_t seed);

struct PairEvent {
  TokenId left;
  TokenId right;
  std::uint64_t count;  // after this observation
};

struct MergeEvent {
  TokenId left;
  TokenId right;
  TokenId created;
  std::uint64_t observations;
  // Token that pair counting continues from; equals `created`.
  TokenId previous_after;
};

struct TrainingHooks {
  std::function<void(const PairEvent&)> on_pair;
  std::function<void(const MergeEvent&)> on_merge;
};

struct TrainingResult {
  Dictionary dictionary;
  DynamicMatcher matcher;
  TrainingReport report;
};

// Single-pass dictionary builder. Each string is parsed greedily with the
// current dictionary; every adjacent pair of matches within the string is
// counted, and a pair that reaches the threshold becomes a new token which
// then replaces the second match as the previous one. Pairs never span two
// strings.
class Trainer {
 public:
  // Starts from an existing dictionary (normally the 256-entry base one).
  Trainer(Dictionary dictionary, std::uint32_t threshold);

  void set_hooks(TrainingHooks hooks) { hooks_ = std::move(hooks); }

  // Processes one string. Returns false once the dictionary is full; the rest
  // of the string is then left unread.
  bool feed(std::string_view s);

  bool full() const noexcept { return dict_.full(); }
  const Dictionary& dictionary() const noexcept { return dict_; }
  const DynamicMatcher& matcher() const noexcept { return matcher_; }
  std::uint32_t threshold() const noexcept { return threshold_; }
  std::size_t bytes_consumed() const noexcept { return bytes_consumed_; }
  std::size_t strings_consumed() const noexcept { return strings_consumed_; }
  std::size_t pending_pairs() const noexcept { return pairs_.size(); }
  std::size_t skipped_merges() const noexcept { return skipped_merges_; }

  TrainingResult finish() &&;

 private:
  static std::uint64_t pair_key(TokenId a, TokenId b) noexcept { return (std::uint64_t{a} << 32) | b; }

  Dictionary dict_;
  DynamicMatcher matcher_;
  std::uint32_t threshold_;
  std::size_t base_entries_;
  absl::flat_hash_map<std::uint64_t, std::uint32_t> pairs_;
  TrainingHooks hooks_;
  std::string scratch_;
  std::size_t bytes_consumed_ = 0;
  std::size_t strings_consumed_ = 0;
  std::size_t skipped_merges_ = 0;
};

TrainingResult train(const Corpus& corpus, const TrainerConfig& config);

}  // namespace ssc
