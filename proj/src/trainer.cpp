#include "ssc/trainer.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ssc/error.hpp"
#include "ssc/rng.hpp"

namespace ssc {

void TrainerConfig::validate() const {
  if (bits_per_token < kMinBitsPerToken || bits_per_token > kMaxBitsPerToken) {
    throw ConfigError("bits_per_token must be in [9, 21], got " + std::to_string(bits_per_token));
  }
  if (threshold && *threshold < kMinThreshold) {
    throw ConfigError("pair frequency threshold must be at least 2, got " + std::to_string(*threshold));
  }
}

std::string_view to_string(StopReason reason) noexcept {
  return reason == StopReason::dictionary_full ? "dictionary_full" : "sample_exhausted";
}

std::string TrainingReport::to_key_value() const {
  std::ostringstream out;
  out << "tokens_created=" << tokens_created << '\n'
      << "entry_count=" << entry_count << '\n'
      << "bytes_consumed=" << bytes_consumed << '\n'
      << "strings_consumed=" << strings_consumed << '\n'
      << "sample_bytes=" << sample_bytes << '\n'
      << "sample_strings=" << sample_strings << '\n'
      << "threshold=" << threshold << '\n'
      << "wall_time_s=" << wall_time_s << '\n'
      << "stop_reason=" << to_string(stop_reason) << '\n'
      << "rng=" << kRngName << '\n';
  return out.str();
}

std::uint32_t compute_threshold(double dataset_size_mib) noexcept {
  if (!(dataset_size_mib >= 4.0)) return kMinThreshold;
  return static_cast<std::uint32_t>(std::floor(std::log2(dataset_size_mib)));
}

std::vector<std::size_t> sample_strings(const Corpus& corpus, std::size_t sample_bytes, std::uint64_t seed) {
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  if (sample_bytes >= corpus.total_bytes()) return order;
  std::size_t taken = 0;
  std::size_t count = 0;
  while (count < order.size() && taken < sample_bytes) {
    taken += corpus[order[count]].size();
    ++count;
  }
  order.resize(count);
  return order;
}

Trainer::Trainer(Dictionary dictionary, std::uint32_t threshold)
    : dict_(std::move(dictionary)),
      matcher_(DynamicMatcher::for_dictionary(dict_)),
      threshold_(threshold),
      base_entries_(dict_.size()) {
  if (threshold < kMinThreshold) {
    throw ConfigError("pair frequency threshold must be at least 2, got " + std::to_string(threshold));
  }
}

bool Trainer::feed(std::string_view s) {
  if (dict_.full()) return false;
  std::size_t pos = 0;
  bool has_previous = false;
  Match previous;
  while (pos < s.size()) {
    Match current = matcher_.search(s.substr(pos));
    pos += current.length;
    if (has_previous) {
      const std::uint64_t key = pair_key(previous.id, current.id);
      const std::uint32_t count = ++pairs_[key];
      if (hooks_.on_pair) hooks_.on_pair({previous.id, current.id, count});
      if (count >= threshold_) {
        pairs_.erase(key);
        const std::string_view left = dict_.token_unchecked(previous.id);
        const std::string_view right = dict_.token_unchecked(current.id);
        scratch_.assign(left);
        scratch_.append(right);
        const auto next_id = static_cast<TokenId>(dict_.size());
        if (matcher_.insert(scratch_, next_id) == DynamicMatcher::InsertResult::inserted) {
          dict_.append(scratch_);
          if (hooks_.on_merge) hooks_.on_merge({previous.id, current.id, next_id, count, next_id});
          current = {next_id, static_cast<std::uint32_t>(scratch_.size())};
          if (dict_.full()) {
            bytes_consumed_ += pos;
            ++strings_consumed_;
            return false;
          }
        } else {
          ++skipped_merges_;
        }
      }
    }
    previous = current;
    has_previous = true;
  }
  bytes_consumed_ += s.size();
  ++strings_consumed_;
  return true;
}

TrainingResult Trainer::finish() && {
  TrainingReport report;
  report.tokens_created = dict_.size() - base_entries_;
  report.entry_count = dict_.size();
  report.bytes_consumed = bytes_consumed_;
  report.strings_consumed = strings_consumed_;
  report.threshold = threshold_;
  report.stop_reason = dict_.full() ? StopReason::dictionary_full : StopReason::sample_exhausted;
  return {std::move(dict_), std::move(matcher_), report};
}

TrainingResult train(const Corpus& corpus, const TrainerConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  const std::uint32_t threshold = config.threshold.value_or(compute_threshold(corpus.stats().size_mib));
  const auto sample = sample_strings(corpus, config.sample_bytes, config.seed);

  Trainer trainer(Dictionary::for_variant(config.variant, config.bits_per_token), threshold);
  std::size_t sample_bytes = 0;
  for (std::size_t index : sample) sample_bytes += corpus[index].size();
  for (std::size_t index : sample) {
    if (!trainer.feed(corpus[index])) break;
  }

  TrainingResult result = std::move(trainer).finish();
  result.report.sample_bytes = sample_bytes;
  result.report.sample_strings = sample.size();
  result.report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace ssc
