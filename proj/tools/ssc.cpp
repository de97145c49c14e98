// Command-line front end: train, compress, decompress, benchmark and export
// diagnostics.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ssc/bench.hpp"
#include "ssc/codec.hpp"
#include "ssc/corpus.hpp"
#include "ssc/synthetic.hpp"
#include "ssc/trainer.hpp"

namespace fs = std::filesystem;

namespace {

struct TrainFlags {
  std::string variant = "bounded16";
  unsigned bits = ssc::kDefaultBitsPerToken;
  std::optional<std::uint32_t> threshold;
  std::size_t sample_bytes = ssc::kDefaultSampleBytes;
  std::uint64_t seed = 42;

  ssc::TrainerConfig config() const {
    ssc::TrainerConfig c;
    c.variant = variant == "unbounded" ? ssc::Variant::unbounded : ssc::Variant::bounded16;
    c.bits_per_token = bits;
    c.threshold = threshold;
    c.sample_bytes = sample_bytes;
    c.seed = seed;
    return c;
  }
};

void add_train_flags(CLI::App* cmd, TrainFlags& f) {
  cmd->add_option("--variant", f.variant, "Token length bound")
      ->check(CLI::IsMember({"unbounded", "bounded16"}))
      ->capture_default_str();
  cmd->add_option("--bits", f.bits, "Bits per token (9-21)")->check(CLI::Range(9u, 21u))->capture_default_str();
  cmd->add_option("--threshold", f.threshold, "Pair frequency threshold (default: from corpus size)");
  cmd->add_option("--sample-bytes", f.sample_bytes, "Training sample size in bytes")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Sampling seed")->capture_default_str();
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write error on " + path.string());
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

ssc::Corpus load(const std::string& path, std::optional<std::size_t> limit) {
  ssc::Corpus c = ssc::load_lines(path, limit);
  const auto s = c.stats();
  std::cerr << fmt::format("loaded {}: {:.2f} MiB, {} rows, avg {:.1f} B\n", c.name(), s.size_mib, s.rows,
                           s.avg_len_bytes);
  return c;
}

int report_bench(const std::vector<ssc::BenchResult>& results, const std::string& out_dir, const std::string& stem) {
  std::cout << ssc::bench_table(results);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / (stem + ".csv"), ssc::bench_csv(results));
    write_text(fs::path(out_dir) / (stem + ".jsonl"), ssc::bench_jsonl(results));
  }
  std::size_t mismatches = 0;
  for (const auto& r : results) mismatches += r.mismatches;
  if (mismatches != 0) {
    std::cerr << "verification failed: " << mismatches << " mismatching strings\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Short-string dictionary compression"};
  app.require_subcommand(1);

  std::string input;
  std::string out;
  std::string out_dir;
  std::string dict_path;
  std::string column_path;
  std::optional<std::size_t> limit_bytes;
  std::optional<std::size_t> index;
  std::size_t queries = ssc::kDefaultQueries;
  int repetitions = 3;
  unsigned min_bits = 9, max_bits = 21;
  std::uint32_t min_threshold = 2, max_threshold = 30;
  std::size_t gen_bytes = 4 << 20;
  TrainFlags tf;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "LF-delimited input corpus")->required()->check(CLI::ExistingFile);
    cmd->add_option("--limit-bytes", limit_bytes, "Read at most this many bytes of the input");
  };

  auto* train_cmd = app.add_subcommand("train", "Train a dictionary");
  add_input(train_cmd);
  add_train_flags(train_cmd, tf);
  train_cmd->add_option("--out", out, "Dictionary file")->required();

  auto* compress_cmd = app.add_subcommand("compress", "Compress a corpus with a trained dictionary");
  add_input(compress_cmd);
  compress_cmd->add_option("--dict", dict_path, "Dictionary file")->required()->check(CLI::ExistingFile);
  compress_cmd->add_option("--out", out, "Compressed column file")->required();

  auto* decompress_cmd = app.add_subcommand("decompress", "Decompress a column (all strings or one)");
  decompress_cmd->add_option("--dict", dict_path, "Dictionary file")->required()->check(CLI::ExistingFile);
  decompress_cmd->add_option("--column", column_path, "Compressed column file")->required()->check(CLI::ExistingFile);
  decompress_cmd->add_option("--out", out, "Output file (default: stdout)");
  decompress_cmd->add_option("--index", index, "Decompress only this string");

  auto* bench_cmd = app.add_subcommand("bench", "Benchmark ratio, throughput and access latency");
  add_input(bench_cmd);
  add_train_flags(bench_cmd, tf);

  auto* bits_cmd = app.add_subcommand("sweep-bits", "Benchmark across bits-per-token values (threshold 2)");
  add_input(bits_cmd);
  add_train_flags(bits_cmd, tf);
  bits_cmd->add_option("--min-bits", min_bits)->check(CLI::Range(9u, 21u))->capture_default_str();
  bits_cmd->add_option("--max-bits", max_bits)->check(CLI::Range(9u, 21u))->capture_default_str();

  auto* thr_cmd = app.add_subcommand("sweep-threshold", "Training cost and ratio across thresholds");
  add_input(thr_cmd);
  add_train_flags(thr_cmd, tf);
  thr_cmd->add_option("--min-threshold", min_threshold)->capture_default_str();
  thr_cmd->add_option("--max-threshold", max_threshold)->capture_default_str();

  auto* diag_cmd = app.add_subcommand("diagnostics", "Write per-token statistics as CSV");
  add_input(diag_cmd);
  add_train_flags(diag_cmd, tf);

  auto* gen_cmd = app.add_subcommand("generate", "Write the synthetic catalog-title corpus");
  gen_cmd->add_option("--out", out, "Output file")->required();
  gen_cmd->add_option("--bytes", gen_bytes, "Target size in bytes")->capture_default_str();
  gen_cmd->add_option("--seed", tf.seed, "Generator seed")->capture_default_str();

  for (auto* cmd : {bench_cmd, bits_cmd, thr_cmd, diag_cmd}) {
    cmd->add_option("--out-dir", out_dir, "Directory for CSV/JSON-lines output");
  }
  for (auto* cmd : {bench_cmd, bits_cmd}) {
    cmd->add_option("--queries", queries, "Random access queries")->capture_default_str();
    cmd->add_option("--repetitions", repetitions, "Timed repetitions per phase")->capture_default_str();
  }
  diag_cmd->get_option("--out-dir")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_cmd->parsed()) {
      const ssc::Corpus corpus = load(input, limit_bytes);
      ssc::TrainingResult result = ssc::train(corpus, tf.config());
      write_file(out, result.dictionary.serialize());
      std::cout << result.report.to_key_value();
      return 0;
    }
    if (compress_cmd->parsed()) {
      const ssc::Corpus corpus = load(input, limit_bytes);
      const auto dict_bytes = read_file(dict_path);
      ssc::Codec codec(ssc::Dictionary::deserialize(dict_bytes));
      const ssc::CompressedColumn column = codec.compress(corpus);
      write_file(out, column.serialize());
      const auto fp = codec.dictionary().footprint();
      std::cout << "raw_bytes=" << corpus.total_bytes() << '\n'
                << "token_count=" << column.token_count() << '\n'
                << "dict_total_bytes=" << fp.total_bytes << '\n'
                << "compression_ratio="
                << ssc::compression_ratio(corpus.total_bytes(), column.token_count(), codec.dictionary().id_bytes(),
                                          fp.total_bytes)
                << '\n';
      return 0;
    }
    if (decompress_cmd->parsed()) {
      const ssc::Dictionary dict = ssc::Dictionary::deserialize(read_file(dict_path));
      const ssc::CompressedColumn column = ssc::CompressedColumn::deserialize(read_file(column_path));
      column.check_pairing(dict);
      std::ofstream file;
      if (!out.empty()) {
        file.open(out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + out + " for writing");
      }
      std::ostream& os = out.empty() ? std::cout : file;
      if (index) {
        os << ssc::decompress_string(dict, column, *index) << '\n';
      } else {
        const ssc::Corpus decoded = ssc::decompress_all(dict, column);
        for (std::size_t i = 0; i < decoded.size(); ++i) os << decoded[i] << '\n';
      }
      return os ? 0 : 1;
    }
    if (bench_cmd->parsed()) {
      const ssc::Corpus corpus = load(input, limit_bytes);
      ssc::BenchConfig config{tf.config(), {queries, 7}, repetitions};
      return report_bench({ssc::run_benchmark(corpus, config)}, out_dir, "bench");
    }
    if (bits_cmd->parsed()) {
      const ssc::Corpus corpus = load(input, limit_bytes);
      ssc::BenchConfig config{tf.config(), {queries, 7}, repetitions};
      return report_bench(ssc::sweep_bits(corpus, config, min_bits, max_bits), out_dir, "sweep_bits");
    }
    if (thr_cmd->parsed()) {
      const ssc::Corpus corpus = load(input, limit_bytes);
      const auto points = ssc::sweep_threshold(corpus, tf.config(), min_threshold, max_threshold);
      std::cout << ssc::threshold_table(points);
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_text(fs::path(out_dir) / "sweep_threshold.csv", ssc::threshold_csv(points));
      }
      return 0;
    }
    if (diag_cmd->parsed()) {
      const ssc::Corpus corpus = load(input, limit_bytes);
      ssc::TrainingResult trained = ssc::train(corpus, tf.config());
      ssc::Codec codec(std::move(trained.dictionary), std::move(trained.matcher));
      const ssc::CompressedColumn column = codec.compress(corpus);
      for (const auto& path : ssc::write_diagnostics(ssc::compute_diagnostics(codec, column), out_dir)) {
        std::cout << path.string() << '\n';
      }
      return 0;
    }
    if (gen_cmd->parsed()) {
      ssc::write_lines(out, ssc::synthetic::markov_titles(gen_bytes, tf.seed));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
