#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ssc/codec.hpp"
#include "ssc/corpus.hpp"
#include "ssc/trainer.hpp"

namespace ssc {

inline constexpr std::size_t kDefaultQueries = 1'000'000;

struct QueryWorkload {
  std::size_t queries = kDefaultQueries;
  std::uint64_t seed = 7;

  // Uniform string indices in [0, rows).
  std::vector<std::size_t> indices(std::size_t rows) const;
};

struct BenchConfig {
  TrainerConfig trainer;
  QueryWorkload workload;
  // Timed runs per phase after one untimed warm-up; the median is reported.
  int repetitions = 3;
};

struct BenchResult {
  std::string corpus;
  Variant variant = Variant::bounded16;
  unsigned bits_per_token = kDefaultBitsPerToken;
  std::uint32_t threshold = 0;

  // Raw components; every derived figure below can be recomputed from them.
  std::size_t rows = 0;
  std::size_t raw_bytes = 0;
  std::size_t token_count = 0;
  std::size_t id_bytes = 2;
  std::size_t entry_count = 0;
  std::size_t dict_total_bytes = 0;
  std::size_t dict_data_bytes = 0;
  std::size_t training_bytes_consumed = 0;
  StopReason stop_reason = StopReason::sample_exhausted;
  double training_s = 0;
  double parsing_s = 0;
  double decompress_s = 0;
  std::size_t queries = 0;
  double access_total_s = 0;
  std::size_t mismatches = 0;

  // raw_bytes / (id_bytes * token_count + dict_total_bytes)
  double compression_ratio = 0;
  // raw MiB / parsing_s
  double compress_mib_s = 0;
  // raw MiB / (training_s + parsing_s)
  double compress_incl_training_mib_s = 0;
  double decompress_mib_s = 0;
  // access_total_s / queries; absent without queries
  std::optional<double> access_ns;
  // raw_bytes / token_count
  double avg_token_len = 0;
  double dict_total_mib = 0;
  double dict_data_mib = 0;
};

double compression_ratio(std::size_t raw_bytes, std::size_t token_count, std::size_t id_bytes,
                         std::size_t dict_total_bytes) noexcept;

// Trains, parses the whole corpus, decodes it end to end and runs the random
// access workload, timing each phase. All strings and all queried strings are
// verified in separate untimed passes; failures are counted in `mismatches`.
BenchResult run_benchmark(const Corpus& corpus, const BenchConfig& config);

// One benchmark per bits-per-token value with the threshold forced to 2.
std::vector<BenchResult> sweep_bits(const Corpus& corpus, const BenchConfig& config, unsigned min_bits = 9,
                                    unsigned max_bits = 21);

struct ThresholdPoint {
  std::uint32_t threshold = 0;
  std::size_t entry_count = 0;
  std::size_t bytes_consumed = 0;
  std::size_t strings_consumed = 0;
  StopReason stop_reason = StopReason::sample_exhausted;
  std::size_t token_count = 0;
  std::size_t dict_total_bytes = 0;
  double compression_ratio = 0;
};

// Trains and parses once per threshold in [min_threshold, max_threshold].
// Throws ConfigError if min_threshold < 2.
std::vector<ThresholdPoint> sweep_threshold(const Corpus& corpus, const TrainerConfig& config,
                                            std::uint32_t min_threshold = 2, std::uint32_t max_threshold = 30);

std::string bench_csv(const std::vector<BenchResult>& results);
std::string bench_jsonl(const std::vector<BenchResult>& results);
std::string bench_table(const std::vector<BenchResult>& results);
std::string threshold_csv(const std::vector<ThresholdPoint>& points);
std::string threshold_table(const std::vector<ThresholdPoint>& points);

// Per-token statistics of a compressed column.
struct Diagnostics {
  struct LengthGain {
    std::uint32_t length;
    std::size_t tokens;
    std::uint64_t occurrences;
    std::int64_t gain;
    double cumulative_gain_pct;
    double cumulative_occurrence_pct;
  };
  struct Histogram {
    std::uint64_t value;
    std::uint64_t count;
    double pct;
  };
  struct Coverage {
    std::size_t rank;
    TokenId token;
    std::uint64_t frequency;
    std::uint32_t length;
    std::uint64_t cumulative_data_bytes;
    double cumulative_occurrence_pct;
  };
  struct SmoothedGain {
    TokenId token;
    std::uint32_t length;
    std::uint64_t frequency;
    std::int64_t gain;
    double smoothed_gain;
  };

  std::vector<std::uint64_t> frequency;  // per token ID
  std::vector<LengthGain> gain_by_length;
  std::vector<Histogram> bucket_sizes;   // long-pattern suffixes per bucket
  std::vector<Histogram> token_lengths;  // lengths of the tokens in the output
  std::vector<Coverage> coverage;        // by descending frequency
  std::vector<SmoothedGain> smoothed_gain;
  std::size_t smoothing_window = 1;
  std::int64_t total_gain = 0;
};

Diagnostics compute_diagnostics(const Codec& codec, const CompressedColumn& column);

// Writes gain_by_length.csv, bucket_sizes.csv, token_lengths.csv,
// coverage.csv and smoothed_gain.csv into `dir` (created if missing).
// Returns the paths written.
std::vector<std::filesystem::path> write_diagnostics(const Diagnostics& diagnostics, const std::filesystem::path& dir);

}  // namespace ssc
