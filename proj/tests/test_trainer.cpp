#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ssc/error.hpp"
#include "ssc/synthetic.hpp"
#include "ssc/trainer.hpp"

using namespace ssc;

TEST_SUITE("trainer") {

TEST_CASE("threshold formula") {
  CHECK(compute_threshold(1) == 2);
  CHECK(compute_threshold(0.001) == 2);
  CHECK(compute_threshold(3.99) == 2);
  CHECK(compute_threshold(4) == 2);
  CHECK(compute_threshold(7.9) == 2);
  CHECK(compute_threshold(8) == 3);
  CHECK(compute_threshold(256) == 8);
  CHECK(compute_threshold(220.59) == 7);
  CHECK(compute_threshold(1 << 20) == 20);
}

TEST_CASE("config validation") {
  TrainerConfig cfg;
  cfg.threshold = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.threshold = 2;
  CHECK_NOTHROW(cfg.validate());
  cfg.bits_per_token = 8;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_THROWS_AS(Trainer(Dictionary(16, 16), 1), ConfigError);
}

TEST_CASE("sampling") {
  const Corpus c = synthetic::markov_titles(200'000, 9);
  const auto a = sample_strings(c, c.total_bytes() / 10, 77);
  CHECK(a == sample_strings(c, c.total_bytes() / 10, 77));
  CHECK(a != sample_strings(c, c.total_bytes() / 10, 78));

  std::size_t taken = 0;
  std::size_t longest = 0;
  for (auto i : a) {
    taken += c[i].size();
    longest = std::max(longest, c[i].size());
  }
  CHECK(taken >= c.total_bytes() / 10);
  CHECK(taken - c[a.back()].size() < c.total_bytes() / 10);
  CHECK(taken <= c.total_bytes() / 10 + longest);

  auto all = sample_strings(c, c.total_bytes(), 77);
  CHECK(all.size() == c.size());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> iota(c.size());
  std::iota(iota.begin(), iota.end(), std::size_t{0});
  CHECK(all == iota);
}

TEST_CASE("merge trace: abra + cad at the threshold") {
  Trainer t(fixture::abracad_dictionary(), 10);
  std::vector<PairEvent> pairs;
  std::vector<MergeEvent> merges;
  t.set_hooks({[&](const PairEvent& e) { pairs.push_back(e); }, [&](const MergeEvent& e) { merges.push_back(e); }});

  for (int i = 0; i < 9; ++i) t.feed("abracad");
  REQUIRE(pairs.size() == 9);
  CHECK(pairs.back().left == fixture::kAbra);
  CHECK(pairs.back().right == fixture::kCad);
  CHECK(pairs.back().count == 9);
  CHECK(merges.empty());
  CHECK(t.dictionary().size() == 793);

  t.feed("abracadz");
  REQUIRE(merges.size() == 1);
  CHECK(merges[0].left == fixture::kAbra);
  CHECK(merges[0].right == fixture::kCad);
  CHECK(merges[0].created == fixture::kAbracad);
  CHECK(merges[0].observations == 10);
  CHECK(t.dictionary().token(fixture::kAbracad) == "abracad");
  // The register now holds the new token, so the next pair starts from it.
  REQUIRE(pairs.size() == 11);
  CHECK(pairs[9].count == 10);
  CHECK(pairs[10].left == fixture::kAbracad);
  CHECK(pairs[10].right == 'z');
  CHECK(t.pending_pairs() == 1);

  const auto r = std::move(t).finish();
  CHECK(r.report.tokens_created == 1);
  CHECK(r.matcher.search("abracadabra") == Match{fixture::kAbracad, 7});
}

TEST_CASE("a run of one byte doubles its longest token") {
  TrainerConfig cfg;
  cfg.variant = Variant::unbounded;
  cfg.threshold = 2;
  const auto r = train(Corpus::from_strings(std::vector<std::string>{std::string(100, 'a')}), cfg);
  REQUIRE(r.dictionary.size() == 261);
  CHECK(r.dictionary.token(256) == "aa");
  CHECK(r.dictionary.token(257) == std::string(4, 'a'));
  CHECK(r.dictionary.token(258) == std::string(8, 'a'));
  CHECK(r.dictionary.token(259) == std::string(16, 'a'));
  CHECK(r.dictionary.token(260) == std::string(32, 'a'));
  CHECK(r.report.tokens_created == 5);
  CHECK(r.report.stop_reason == StopReason::sample_exhausted);
  CHECK(r.report.bytes_consumed == 100);
}

TEST_CASE("bounded variant skips merges that would exceed 16 bytes") {
  Trainer t(Dictionary(16, 16), 2);
  t.feed(std::string(200, 'a'));
  CHECK(t.dictionary().longest_entry() == 16);
  CHECK(t.dictionary().size() == 260);
  CHECK(t.skipped_merges() > 0);
}

TEST_CASE("empty sample") {
  const auto r = train(Corpus(), TrainerConfig{});
  CHECK(r.dictionary.size() == 256);
  CHECK(r.report.tokens_created == 0);
  CHECK(r.report.stop_reason == StopReason::sample_exhausted);
}

TEST_CASE("stops when the dictionary is full") {
  const Corpus c = synthetic::markov_titles(300'000, 2);
  TrainerConfig cfg;
  cfg.bits_per_token = 9;
  const auto r = train(c, cfg);
  CHECK(r.dictionary.size() == 512);
  CHECK(r.report.stop_reason == StopReason::dictionary_full);
  CHECK(r.report.bytes_consumed < c.total_bytes());
  CHECK(r.report.tokens_created == r.dictionary.size() - 256);
}

TEST_CASE("pairs never span two strings") {
  std::vector<std::string> rows(500, "ab");
  TrainerConfig cfg;
  cfg.threshold = 2;
  const auto r = train(Corpus::from_strings(rows), cfg);
  CHECK(r.dictionary.size() == 257);
  CHECK(r.dictionary.token(256) == "ab");
}

TEST_CASE("merges record their parents and the threshold") {
  const Corpus c = synthetic::markov_titles(300'000, 6);
  Trainer t(Dictionary(14, 16), 3);
  std::vector<std::string> contents;
  bool ok = true;
  t.set_hooks({nullptr, [&](const MergeEvent& e) {
                 const std::string want = std::string(t.dictionary().token(e.left)) + std::string(t.dictionary().token(e.right));
                 ok = ok && e.observations == 3 && e.created + 1 == t.dictionary().size() && e.previous_after == e.created;
                 contents.push_back(want);
               }});
  for (std::size_t i = 0; i < c.size() && t.feed(c[i]); ++i) {
  }
  CHECK(ok);
  REQUIRE(contents.size() == t.dictionary().size() - 256);
  for (std::size_t k = 0; k < contents.size(); ++k) REQUIRE(t.dictionary().token(256 + k) == contents[k]);
  std::vector<std::string_view> all;
  for (std::size_t id = 0; id < t.dictionary().size(); ++id) all.push_back(t.dictionary().token(id));
  std::sort(all.begin(), all.end());
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("training is deterministic") {
  const Corpus c = synthetic::markov_titles(300'000, 8);
  TrainerConfig cfg;
  cfg.sample_bytes = 100'000;
  const auto a = train(c, cfg);
  const auto b = train(c, cfg);
  CHECK(a.dictionary == b.dictionary);
  CHECK(a.dictionary.serialize() == b.dictionary.serialize());
  cfg.seed = 43;
  CHECK_FALSE(train(c, cfg).dictionary == a.dictionary);
}

TEST_CASE("report") {
  const auto r = train(synthetic::markov_titles(50'000, 1), TrainerConfig{});
  const std::string kv = r.report.to_key_value();
  CHECK(kv.find("stop_reason=") != std::string::npos);
  CHECK(kv.find("rng=mt19937_64") != std::string::npos);
  CHECK(r.report.threshold == 2);
}

}
