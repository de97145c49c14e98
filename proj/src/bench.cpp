#include "ssc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "ssc/error.hpp"
#include "ssc/rng.hpp"

namespace ssc {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kMiB = 1024.0 * 1024.0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// Keeps the optimizer from discarding decoded output.
volatile std::uint64_t g_sink = 0;

struct CompressionRun {
  double training_s;
  double parsing_s;
};

std::string_view variant_name(Variant v) { return v == Variant::bounded16 ? "bounded16" : "unbounded"; }

}  // namespace

std::vector<std::size_t> QueryWorkload::indices(std::size_t rows) const {
  std::vector<std::size_t> out;
  if (rows == 0) return out;
  out.reserve(queries);
  Rng rng(seed);
  for (std::size_t q = 0; q < queries; ++q) out.push_back(rng.below(rows));
  return out;
}

double compression_ratio(std::size_t raw_bytes, std::size_t token_count, std::size_t id_bytes,
                         std::size_t dict_total_bytes) noexcept {
  const double denominator = static_cast<double>(id_bytes * token_count + dict_total_bytes);
  return denominator == 0 ? 0.0 : static_cast<double>(raw_bytes) / denominator;
}

BenchResult run_benchmark(const Corpus& corpus, const BenchConfig& config) {
  config.trainer.validate();
  const int reps = std::max(1, config.repetitions);

  BenchResult r;
  r.corpus = corpus.name();
  r.variant = config.trainer.variant;
  r.bits_per_token = config.trainer.bits_per_token;
  r.rows = corpus.size();
  r.raw_bytes = corpus.total_bytes();

  // Compression: training (incl. matcher finalization) then parsing, timed
  // within the same run so the two phases add up to the total.
  std::optional<Codec> codec;
  CompressedColumn column;
  TrainingReport report;
  std::vector<CompressionRun> runs;
  for (int rep = 0; rep <= reps; ++rep) {
    const auto t0 = Clock::now();
    TrainingResult trained = train(corpus, config.trainer);
    Codec c(std::move(trained.dictionary), std::move(trained.matcher));
    const auto t1 = Clock::now();
    CompressedColumn col = c.compress(corpus);
    const auto t2 = Clock::now();
    if (rep > 0) {
      runs.push_back({std::chrono::duration<double>(t1 - t0).count(), std::chrono::duration<double>(t2 - t1).count()});
    }
    report = trained.report;
    codec.emplace(std::move(c));
    column = std::move(col);
  }
  std::sort(runs.begin(), runs.end(), [](const CompressionRun& a, const CompressionRun& b) {
    return a.training_s + a.parsing_s < b.training_s + b.parsing_s;
  });
  r.training_s = runs[runs.size() / 2].training_s;
  r.parsing_s = runs[runs.size() / 2].parsing_s;

  const Dictionary& dict = codec->dictionary();
  const Footprint fp = dict.footprint();
  r.threshold = report.threshold;
  r.training_bytes_consumed = report.bytes_consumed;
  r.stop_reason = report.stop_reason;
  r.token_count = column.token_count();
  r.id_bytes = dict.id_bytes();
  r.entry_count = dict.size();
  r.dict_total_bytes = fp.total_bytes;
  r.dict_data_bytes = fp.data_bytes;

  // Full decode, start to finish, into a preallocated buffer.
  {
    const Corpus decoded = decompress_all(dict, column);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (decoded[i] != corpus[i]) ++r.mismatches;
    }
  }
  std::vector<std::uint8_t> decode_out(total_decoded_length(dict, column) + kCopyWidth);
  std::vector<std::uint64_t> decode_ends(column.size() + 1);
  std::vector<double> decode_times;
  for (int rep = 0; rep <= reps; ++rep) {
    const auto t0 = Clock::now();
    const std::size_t n = decompress_all_into(dict, column, decode_out.data(), decode_ends.data());
    const double t = seconds_since(t0);
    if (rep > 0) decode_times.push_back(t);
    g_sink = g_sink + n + decode_out[n / 2];
  }
  r.decompress_s = median(decode_times);

  // Random access into a reused buffer.
  const auto queries = config.workload.indices(corpus.size());
  r.queries = queries.size();
  if (!queries.empty()) {
    DecodeBuffer buffer(max_decoded_length(dict, column));
    std::uint8_t* out = buffer.data();
    for (std::size_t q : queries) {
      const std::size_t len = decompress_string_into(dict, column, q, out);
      if (std::string_view(reinterpret_cast<const char*>(out), len) != corpus[q]) ++r.mismatches;
    }
    std::vector<double> access_times;
    for (int rep = 0; rep <= reps; ++rep) {
      std::uint64_t checksum = 0;
      const auto t0 = Clock::now();
      for (std::size_t q : queries) {
        const std::size_t len = decompress_string_into(dict, column, q, out);
        checksum += len + out[0];
      }
      const double t = seconds_since(t0);
      g_sink = g_sink + checksum;
      if (rep > 0) access_times.push_back(t);
    }
    r.access_total_s = median(access_times);
    r.access_ns = r.access_total_s * 1e9 / static_cast<double>(queries.size());
  }

  const double raw_mib = static_cast<double>(r.raw_bytes) / kMiB;
  r.compression_ratio = compression_ratio(r.raw_bytes, r.token_count, r.id_bytes, r.dict_total_bytes);
  r.compress_mib_s = r.parsing_s > 0 ? raw_mib / r.parsing_s : 0;
  r.compress_incl_training_mib_s = (r.training_s + r.parsing_s) > 0 ? raw_mib / (r.training_s + r.parsing_s) : 0;
  r.decompress_mib_s = r.decompress_s > 0 ? raw_mib / r.decompress_s : 0;
  r.avg_token_len = r.token_count == 0 ? 0 : static_cast<double>(r.raw_bytes) / static_cast<double>(r.token_count);
  r.dict_total_mib = static_cast<double>(r.dict_total_bytes) / kMiB;
  r.dict_data_mib = static_cast<double>(r.dict_data_bytes) / kMiB;
  return r;
}

std::vector<BenchResult> sweep_bits(const Corpus& corpus, const BenchConfig& config, unsigned min_bits,
                                    unsigned max_bits) {
  std::vector<BenchResult> rows;
  for (unsigned bits = min_bits; bits <= max_bits; ++bits) {
    BenchConfig c = config;
    c.trainer.bits_per_token = bits;
    c.trainer.threshold = kMinThreshold;
    rows.push_back(run_benchmark(corpus, c));
  }
  return rows;
}

std::vector<ThresholdPoint> sweep_threshold(const Corpus& corpus, const TrainerConfig& config,
                                            std::uint32_t min_threshold, std::uint32_t max_threshold) {
  if (min_threshold < kMinThreshold) {
    throw ConfigError("pair frequency threshold must be at least 2, got " + std::to_string(min_threshold));
  }
  std::vector<ThresholdPoint> points;
  for (std::uint32_t t = min_threshold; t <= max_threshold; ++t) {
    TrainerConfig c = config;
    c.threshold = t;
    TrainingResult trained = train(corpus, c);
    const TrainingReport report = trained.report;
    Codec codec(std::move(trained.dictionary), std::move(trained.matcher));
    const CompressedColumn column = codec.compress(corpus);
    ThresholdPoint p;
    p.threshold = t;
    p.entry_count = codec.dictionary().size();
    p.bytes_consumed = report.bytes_consumed;
    p.strings_consumed = report.strings_consumed;
    p.stop_reason = report.stop_reason;
    p.token_count = column.token_count();
    p.dict_total_bytes = codec.dictionary().footprint().total_bytes;
    p.compression_ratio =
        compression_ratio(corpus.total_bytes(), p.token_count, codec.dictionary().id_bytes(), p.dict_total_bytes);
    points.push_back(p);
  }
  return points;
}

namespace {

constexpr std::string_view kBenchHeader =
    "corpus,variant,bits,threshold,rows,raw_bytes,token_count,id_bytes,entry_count,dict_total_bytes,"
    "dict_data_bytes,training_bytes_consumed,stop_reason,training_s,parsing_s,decompress_s,queries,"
    "access_total_s,mismatches,compression_ratio,compress_mib_s,compress_incl_training_mib_s,"
    "decompress_mib_s,access_ns,avg_token_len,dict_total_mib,dict_data_mib";

nlohmann::ordered_json to_json(const BenchResult& r) {
  nlohmann::ordered_json j;
  j["corpus"] = r.corpus;
  j["variant"] = variant_name(r.variant);
  j["bits"] = r.bits_per_token;
  j["threshold"] = r.threshold;
  j["rows"] = r.rows;
  j["raw_bytes"] = r.raw_bytes;
  j["token_count"] = r.token_count;
  j["id_bytes"] = r.id_bytes;
  j["entry_count"] = r.entry_count;
  j["dict_total_bytes"] = r.dict_total_bytes;
  j["dict_data_bytes"] = r.dict_data_bytes;
  j["training_bytes_consumed"] = r.training_bytes_consumed;
  j["stop_reason"] = to_string(r.stop_reason);
  j["training_s"] = r.training_s;
  j["parsing_s"] = r.parsing_s;
  j["decompress_s"] = r.decompress_s;
  j["queries"] = r.queries;
  j["access_total_s"] = r.access_total_s;
  j["mismatches"] = r.mismatches;
  j["compression_ratio"] = r.compression_ratio;
  j["compress_mib_s"] = r.compress_mib_s;
  j["compress_incl_training_mib_s"] = r.compress_incl_training_mib_s;
  j["decompress_mib_s"] = r.decompress_mib_s;
  j["access_ns"] = r.access_ns ? nlohmann::ordered_json(*r.access_ns) : nlohmann::ordered_json(nullptr);
  j["avg_token_len"] = r.avg_token_len;
  j["dict_total_mib"] = r.dict_total_mib;
  j["dict_data_mib"] = r.dict_data_mib;
  return j;
}

}  // namespace

std::string bench_csv(const std::vector<BenchResult>& results) {
  std::string out(kBenchHeader);
  out += '\n';
  for (const BenchResult& r : results) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{},{:.6f},{},{:.6f},{:.3f},{:.3f},"
                       "{:.3f},{},{:.4f},{:.6f},{:.6f}\n",
                       r.corpus, variant_name(r.variant), r.bits_per_token, r.threshold, r.rows, r.raw_bytes,
                       r.token_count, r.id_bytes, r.entry_count, r.dict_total_bytes, r.dict_data_bytes,
                       r.training_bytes_consumed, to_string(r.stop_reason), r.training_s, r.parsing_s,
                       r.decompress_s, r.queries, r.access_total_s, r.mismatches, r.compression_ratio,
                       r.compress_mib_s, r.compress_incl_training_mib_s, r.decompress_mib_s,
                       r.access_ns ? fmt::format("{:.2f}", *r.access_ns) : std::string(), r.avg_token_len,
                       r.dict_total_mib, r.dict_data_mib);
  }
  return out;
}

std::string bench_jsonl(const std::vector<BenchResult>& results) {
  std::string out;
  for (const BenchResult& r : results) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

std::string bench_table(const std::vector<BenchResult>& results) {
  std::string out = fmt::format("{:<20} {:<10} {:>4} {:>4} {:>8} {:>11} {:>11} {:>12} {:>10} {:>9} {:>9}\n", "corpus",
                                "variant", "bits", "thr", "ratio", "comp MiB/s", "+train MiB/s", "decomp MiB/s",
                                "access ns", "dict MiB", "tok len");
  for (const BenchResult& r : results) {
    out += fmt::format("{:<20} {:<10} {:>4} {:>4} {:>8.3f} {:>11.1f} {:>11.1f} {:>12.1f} {:>10} {:>9.3f} {:>9.2f}\n",
                       r.corpus.substr(0, 20), variant_name(r.variant), r.bits_per_token, r.threshold,
                       r.compression_ratio, r.compress_mib_s, r.compress_incl_training_mib_s, r.decompress_mib_s,
                       r.access_ns ? fmt::format("{:.1f}", *r.access_ns) : std::string("-"), r.dict_total_mib,
                       r.avg_token_len);
  }
  return out;
}

std::string threshold_csv(const std::vector<ThresholdPoint>& points) {
  std::string out =
      "threshold,entry_count,bytes_consumed,strings_consumed,stop_reason,token_count,dict_total_bytes,"
      "compression_ratio\n";
  for (const ThresholdPoint& p : points) {
    out += fmt::format("{},{},{},{},{},{},{},{:.6f}\n", p.threshold, p.entry_count, p.bytes_consumed,
                       p.strings_consumed, to_string(p.stop_reason), p.token_count, p.dict_total_bytes,
                       p.compression_ratio);
  }
  return out;
}

std::string threshold_table(const std::vector<ThresholdPoint>& points) {
  std::string out = fmt::format("{:>9} {:>8} {:>14} {:>17} {:>8}\n", "threshold", "entries", "train bytes",
                                "stop", "ratio");
  for (const ThresholdPoint& p : points) {
    out += fmt::format("{:>9} {:>8} {:>14} {:>17} {:>8.3f}\n", p.threshold, p.entry_count, p.bytes_consumed,
                       to_string(p.stop_reason), p.compression_ratio);
  }
  return out;
}

Diagnostics compute_diagnostics(const Codec& codec, const CompressedColumn& column) {
  const Dictionary& dict = codec.dictionary();
  Diagnostics d;
  d.frequency.assign(dict.size(), 0);
  column.visit_tokens([&](auto tokens) {
    for (auto t : tokens) ++d.frequency[t];
  });
  const std::uint64_t total_occurrences = column.token_count();

  // Gain and occurrences grouped by token length.
  const std::uint32_t max_len = dict.longest_entry();
  std::vector<std::size_t> tokens_by_len(max_len + 1, 0);
  std::vector<std::uint64_t> occ_by_len(max_len + 1, 0);
  std::vector<std::int64_t> gain_by_len(max_len + 1, 0);
  for (TokenId id = 0; id < dict.size(); ++id) {
    const std::uint32_t len = dict.token_length(id);
    const std::int64_t gain = token_gain(len, d.frequency[id]);
    ++tokens_by_len[len];
    occ_by_len[len] += d.frequency[id];
    gain_by_len[len] += gain;
    d.total_gain += gain;
  }
  std::int64_t cum_gain = 0;
  std::uint64_t cum_occ = 0;
  for (std::uint32_t len = 1; len <= max_len; ++len) {
    if (tokens_by_len[len] == 0) continue;
    cum_gain += gain_by_len[len];
    cum_occ += occ_by_len[len];
    d.gain_by_length.push_back(
        {len, tokens_by_len[len], occ_by_len[len], gain_by_len[len],
         d.total_gain == 0 ? 0.0 : 100.0 * static_cast<double>(cum_gain) / static_cast<double>(d.total_gain),
         total_occurrences == 0 ? 0.0 : 100.0 * static_cast<double>(cum_occ) / static_cast<double>(total_occurrences)});
  }

  // Output token lengths.
  for (std::uint32_t len = 1; len <= max_len; ++len) {
    if (occ_by_len[len] == 0) continue;
    d.token_lengths.push_back({len, occ_by_len[len],
                               100.0 * static_cast<double>(occ_by_len[len]) / static_cast<double>(total_occurrences)});
  }

  // Bucket sizes.
  std::vector<std::uint64_t> bucket_hist;
  std::size_t buckets = 0;
  codec.dynamic_matcher().for_each_bucket([&](std::uint64_t, const auto& suffixes) {
    if (bucket_hist.size() <= suffixes.size()) bucket_hist.resize(suffixes.size() + 1, 0);
    ++bucket_hist[suffixes.size()];
    ++buckets;
  });
  for (std::size_t size = 1; size < bucket_hist.size(); ++size) {
    if (bucket_hist[size] == 0) continue;
    d.bucket_sizes.push_back(
        {size, bucket_hist[size], 100.0 * static_cast<double>(bucket_hist[size]) / static_cast<double>(buckets)});
  }

  // Coverage by descending frequency.
  std::vector<TokenId> order(dict.size());
  std::iota(order.begin(), order.end(), TokenId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](TokenId a, TokenId b) { return d.frequency[a] > d.frequency[b]; });
  std::uint64_t cum_bytes = 0;
  cum_occ = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const TokenId id = order[rank];
    cum_bytes += dict.token_length(id);
    cum_occ += d.frequency[id];
    d.coverage.push_back({rank + 1, id, d.frequency[id], dict.token_length(id), cum_bytes,
                          total_occurrences == 0 ? 0.0
                                                 : 100.0 * static_cast<double>(cum_occ) /
                                                       static_cast<double>(total_occurrences)});
  }

  // Trailing moving average of per-token gain, window ~1% of the dictionary.
  d.smoothing_window = std::max<std::size_t>(1, dict.size() / 100);
  double window_sum = 0;
  for (TokenId id = 0; id < dict.size(); ++id) {
    const std::int64_t gain = token_gain(dict.token_length(id), d.frequency[id]);
    window_sum += static_cast<double>(gain);
    if (id >= d.smoothing_window) window_sum -= static_cast<double>(d.smoothed_gain[id - d.smoothing_window].gain);
    const std::size_t width = std::min<std::size_t>(id + 1, d.smoothing_window);
    d.smoothed_gain.push_back(
        {id, dict.token_length(id), d.frequency[id], gain, window_sum / static_cast<double>(width)});
  }
  return d;
}

std::vector<std::filesystem::path> write_diagnostics(const Diagnostics& d, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::string& name, const std::string& content) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write error on " + path.string());
    written.push_back(path);
  };

  std::string csv = "length,tokens,occurrences,gain,cumulative_gain_pct,cumulative_occurrence_pct\n";
  for (const auto& r : d.gain_by_length) {
    csv += fmt::format("{},{},{},{},{:.4f},{:.4f}\n", r.length, r.tokens, r.occurrences, r.gain,
                       r.cumulative_gain_pct, r.cumulative_occurrence_pct);
  }
  write("gain_by_length.csv", csv);

  csv = "bucket_size,buckets,pct\n";
  for (const auto& h : d.bucket_sizes) csv += fmt::format("{},{},{:.4f}\n", h.value, h.count, h.pct);
  write("bucket_sizes.csv", csv);

  csv = "token_length,occurrences,pct\n";
  for (const auto& h : d.token_lengths) csv += fmt::format("{},{},{:.4f}\n", h.value, h.count, h.pct);
  write("token_lengths.csv", csv);

  csv = "rank,token_id,frequency,length,cumulative_data_bytes,cumulative_occurrence_pct\n";
  for (const auto& c : d.coverage) {
    csv += fmt::format("{},{},{},{},{},{:.4f}\n", c.rank, c.token, c.frequency, c.length, c.cumulative_data_bytes,
                       c.cumulative_occurrence_pct);
  }
  write("coverage.csv", csv);

  csv = "token_id,length,frequency,gain,smoothed_gain,window\n";
  for (const auto& s : d.smoothed_gain) {
    csv += fmt::format("{},{},{},{},{:.4f},{}\n", s.token, s.length, s.frequency, s.gain, s.smoothed_gain,
                       d.smoothing_window);
  }
  write("smoothed_gain.csv", csv);
  return written;
}

}  // namespace ssc
