#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ssc/codec.hpp"
#include "ssc/lpm.hpp"
#include "ssc/perfect_hash.hpp"
#include "ssc/synthetic.hpp"
#include "ssc/trainer.hpp"

using namespace ssc;

namespace {

std::uint64_t prefix_of(std::string_view s) { return detail::load_prefix8(s); }

std::string fixture_suffix(unsigned i) { return std::to_string(i); }

// The small matcher used in the worked examples: a short pattern and two
// buckets, "database" with two suffixes and "compress" with three.
DynamicMatcher example_matcher() {
  DynamicMatcher m(kBoundedEntryLen, kMaxBucketSize);
  REQUIRE(m.insert("to", 312) == DynamicMatcher::InsertResult::inserted);
  REQUIRE(m.insert("database table", 2078) == DynamicMatcher::InsertResult::inserted);
  REQUIRE(m.insert("database schema", 1782) == DynamicMatcher::InsertResult::inserted);
  REQUIRE(m.insert("compressor", 2245) == DynamicMatcher::InsertResult::inserted);
  REQUIRE(m.insert("compress files", 944) == DynamicMatcher::InsertResult::inserted);
  REQUIRE(m.insert("compression algo", 1499) == DynamicMatcher::InsertResult::inserted);
  return m;
}

std::vector<std::pair<std::string, TokenId>> suffixes(const std::vector<DynamicMatcher::Suffix>& b) {
  std::vector<std::pair<std::string, TokenId>> out;
  for (const auto& s : b) out.emplace_back(unpack(s.head) + s.tail, s.id);
  return out;
}

}  // namespace

TEST_SUITE("lpm") {

TEST_CASE("short patterns and bucket ordering") {
  const DynamicMatcher m = example_matcher();
  CHECK(m.find("to") == 312u);
  CHECK(m.size() == 6);
  CHECK(m.bucket_count() == 2);

  const auto* db = m.bucket(prefix_of("database"));
  REQUIRE(db != nullptr);
  using P = std::vector<std::pair<std::string, TokenId>>;
  CHECK(suffixes(*db) == P{{" schema", 1782}, {" table", 2078}});
  CHECK((*db)[0].len == 7);
  CHECK((*db)[1].len == 6);

  const auto* cp = m.bucket(prefix_of("compress"));
  REQUIRE(cp != nullptr);
  CHECK(suffixes(*cp) == P{{"ion algo", 1499}, {" files", 944}, {"or", 2245}});
}

TEST_CASE("equal-length suffixes keep insertion order") {
  DynamicMatcher m(kBoundedEntryLen, kMaxBucketSize);
  m.insert("prefix00aa", 300);
  m.insert("prefix00bbb", 301);
  m.insert("prefix00cc", 302);
  m.insert("prefix00d", 303);
  using P = std::vector<std::pair<std::string, TokenId>>;
  CHECK(suffixes(*m.bucket(prefix_of("prefix00"))) == P{{"bbb", 301}, {"aa", 300}, {"cc", 302}, {"d", 303}});
}

TEST_CASE("search walks bucket then short lengths") {
  const DynamicMatcher m = example_matcher();
  CHECK(m.search("compression algorithm for strings") == Match{1499, 16});
  CHECK(m.search("compressor") == Match{2245, 10});
  CHECK(m.search("compresso") == Match{'c', 1});
  CHECK(m.search("database tables") == Match{2078, 14});
  CHECK(m.search("database view") == Match{'d', 1});
  CHECK(m.search("tomato") == Match{312, 2});
  CHECK(m.search("z") == Match{122, 1});
}

TEST_CASE("insert verdicts") {
  DynamicMatcher m(kBoundedEntryLen, kMaxBucketSize);
  for (unsigned i = 0; i < 128; ++i) {
    REQUIRE(m.insert("prefix00" + fixture_suffix(i), 256 + i) == DynamicMatcher::InsertResult::inserted);
  }
  CHECK(m.insert("prefix00zzzzzzzz", 999) == DynamicMatcher::InsertResult::bucket_full);
  CHECK(m.insert("prefix00" + fixture_suffix(3), 999) == DynamicMatcher::InsertResult::duplicate);
  CHECK(m.insert(std::string(17, 'q'), 999) == DynamicMatcher::InsertResult::too_long);
  CHECK(m.insert("other000zz", 999) == DynamicMatcher::InsertResult::inserted);

  DynamicMatcher open(kUnboundedEntryLen, kUnlimitedBucketSize);
  for (unsigned i = 0; i < 300; ++i) {
    REQUIRE(open.insert("prefix00" + fixture_suffix(i), 256 + i) == DynamicMatcher::InsertResult::inserted);
  }
  CHECK(open.bucket(prefix_of("prefix00"))->size() == 300);
  CHECK(open.insert(std::string(40, 'q'), 999) == DynamicMatcher::InsertResult::inserted);
  CHECK(open.search(std::string(41, 'q')) == Match{999, 40});
}

TEST_CASE("matches the brute-force scan on random dictionaries") {
  Rng rng(11);
  for (int round = 0; round < 60; ++round) {
    const bool bounded = round % 2 == 0;
    const unsigned alphabet = 2 + rng.below(4);
    const auto dict = oracle::random_dictionary(rng, 1 + rng.below(1500), bounded ? 16 : 30, alphabet, 0);
    const DynamicMatcher m = DynamicMatcher::for_dictionary(dict);
    REQUIRE(m.size() == dict.size());
    for (int probe = 0; probe < 200; ++probe) {
      const std::string in = oracle::random_probe(rng, dict, alphabet, 0);
      const Match got = m.search(in);
      const Match want = oracle::longest_prefix(dict, in);
      REQUIRE(got == want);
    }
  }
}

TEST_CASE("buckets stay sorted under random inserts") {
  Rng rng(12);
  const auto dict = oracle::random_dictionary(rng, 3000, 24, 2, 'a');
  const DynamicMatcher m = DynamicMatcher::for_dictionary(dict);
  std::size_t long_patterns = 0;
  m.for_each_bucket([&](std::uint64_t, const std::vector<DynamicMatcher::Suffix>& b) {
    long_patterns += b.size();
    for (std::size_t i = 1; i < b.size(); ++i) REQUIRE(b[i - 1].len >= b[i].len);
  });
  CHECK(long_patterns + m.short_patterns().size() == dict.size());
}

TEST_CASE("finalize lays out inline and overflow suffixes") {
  const StaticMatcher s = StaticMatcher::finalize(example_matcher());
  const auto* cp = s.bucket_info(prefix_of("compress"));
  REQUIRE(cp != nullptr);
  CHECK(cp->inline_count == 2);
  CHECK(unpack({cp->inline_suffix[0], cp->inline_len[0]}) == "ion algo");
  CHECK(cp->inline_id[0] == 1499);
  CHECK(unpack({cp->inline_suffix[1], cp->inline_len[1]}) == " files");
  CHECK(cp->inline_id[1] == 944);
  CHECK(cp->overflow_size == 1);
  REQUIRE(cp->overflow_offset != StaticMatcher::kNoOverflow);
  const auto& o = s.overflow()[cp->overflow_offset];
  CHECK(unpack({o.suffix, o.len}) == "or");
  CHECK(o.len == 2);
  CHECK(o.id == 2245);

  const auto* db = s.bucket_info(prefix_of("database"));
  REQUIRE(db != nullptr);
  CHECK(db->overflow_offset == StaticMatcher::kNoOverflow);
  CHECK(db->overflow_size == 0);
  CHECK(db->inline_count == 2);

  CHECK(s.bucket_info(prefix_of("absent!!")) == nullptr);
  CHECK(s.search("compression algorithm for strings") == Match{1499, 16});
  CHECK(s.search("absent!! key") == Match{'a', 1});
  CHECK(s.search("to") == Match{312, 2});
}

TEST_CASE("finalize is only for the bounded variant") {
  DynamicMatcher m(kUnboundedEntryLen, kUnlimitedBucketSize);
  CHECK_THROWS_AS(StaticMatcher::finalize(m), ConfigError);
}

TEST_CASE("static bucket records obey the layout invariants") {
  const Corpus c = synthetic::markov_titles(1 << 20, 3);
  TrainerConfig cfg;
  const auto r = train(c, cfg);
  const StaticMatcher s = StaticMatcher::finalize(r.matcher);
  CHECK(s.bucket_infos().size() == r.matcher.bucket_count());
  r.matcher.for_each_bucket([&](std::uint64_t prefix, const std::vector<DynamicMatcher::Suffix>& b) {
    const auto* info = s.bucket_info(prefix);
    REQUIRE(info != nullptr);
    REQUIRE(info->inline_count == std::min<std::size_t>(2, b.size()));
    REQUIRE(info->overflow_size == b.size() - info->inline_count);
    const unsigned shortest_inline = info->inline_len[info->inline_count - 1];
    for (unsigned i = 0; i < info->overflow_size; ++i) {
      const auto& o = s.overflow()[info->overflow_offset + i];
      REQUIRE(o.len <= shortest_inline);
      REQUIRE(o.id == b[2 + i].id);
    }
  });
}

TEST_CASE("static and dynamic matchers agree") {
  Rng rng(13);
  const Corpus c = synthetic::markov_titles(1 << 20, 4);
  TrainerConfig cfg;
  cfg.bits_per_token = 14;
  const auto r = train(c, cfg);
  const StaticMatcher s = StaticMatcher::finalize(r.matcher);
  for (int i = 0; i < 20000; ++i) {
    const std::string_view row = c[rng.below(c.size())];
    if (row.empty()) continue;
    const std::string_view in = row.substr(rng.below(row.size()));
    REQUIRE(s.search(in) == r.matcher.search(in));
  }
}

TEST_CASE("perfect hash is a bijection onto [0, n)") {
  Rng rng(14);
  for (std::size_t n : {1u, 2u, 3u, 100u, 5000u}) {
    std::set<std::uint64_t> keys;
    while (keys.size() < n) keys.insert(rng.next());
    const std::vector<std::uint64_t> k(keys.begin(), keys.end());
    const PerfectHash h = PerfectHash::build(k);
    std::vector<bool> hit(n, false);
    for (auto key : k) {
      const std::size_t v = h(key);
      REQUIRE(v < n);
      REQUIRE_FALSE(hit[v]);
      hit[v] = true;
    }
  }
}

}
