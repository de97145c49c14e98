#include <doctest.h>

#include <cstring>
#include <string>

#include "fixtures.hpp"
#include "ssc/dictionary.hpp"
#include "ssc/error.hpp"
#include "ssc/trainer.hpp"
#include "ssc/synthetic.hpp"

using namespace ssc;

TEST_SUITE("dictionary") {

TEST_CASE("base dictionary holds the 256 identity bytes") {
  const Dictionary d(16, 16);
  CHECK(d.size() == 256);
  for (unsigned i = 0; i < 256; ++i) {
    REQUIRE(d.token(i).size() == 1);
    CHECK(static_cast<unsigned char>(d.token(i)[0]) == i);
    CHECK(d.offsets()[i] == i);
  }
  CHECK(d.offsets()[256] == 256);
  CHECK(d.token(97) == "a");
  CHECK(d.footprint().data_bytes == 256);
  CHECK(d.footprint().offsets_bytes == 4 * 257);
}

TEST_CASE("configuration is checked") {
  CHECK_THROWS_AS(Dictionary(8, 16), ConfigError);
  CHECK_THROWS_AS(Dictionary(22, 16), ConfigError);
  CHECK_THROWS_AS(Dictionary(16, 1), ConfigError);
  CHECK_NOTHROW(Dictionary(9, 2));
  CHECK_NOTHROW(Dictionary(21, kUnboundedEntryLen));
}

TEST_CASE("append assigns the next id and lays out data contiguously") {
  Dictionary d = fixture::abracad_dictionary();
  REQUIRE(d.size() == 793);
  CHECK(d.token(fixture::kCad) == "cad");
  CHECK(d.token(fixture::kAbra) == "abra");
  CHECK(d.append("abracad") == 793);
  CHECK(d.token(793) == "abracad");
  CHECK(d.offsets()[793] == fixture::kAbracadStart);
  CHECK(d.offsets()[794] == fixture::kAbracadStart + 7);
  CHECK(d.longest_entry() == 7);
}

TEST_CASE("append rejects oversize entries and a full dictionary") {
  Dictionary d(9, 16);
  CHECK_THROWS_AS(d.append(std::string(17, 'x')), LengthError);
  CHECK_THROWS_AS(d.append(""), LengthError);
  CHECK(d.append(std::string(16, 'x')) == 256);
  for (unsigned k = 1; k < 256; ++k) d.append(fixture::filler(4, k));
  CHECK(d.full());
  CHECK_THROWS_AS(d.append("zz"), CapacityError);

  Dictionary big(16, 16);
  for (unsigned k = 0; k < 65536 - 256; ++k) big.append(fixture::filler(16, k));
  CHECK(big.full());
  CHECK_THROWS_AS(big.append("ab"), CapacityError);
}

TEST_CASE("lookup is range checked") {
  const Dictionary d(12, 16);
  CHECK_THROWS_AS(d.token(256), LookupError);
  CHECK_NOTHROW(d.token(255));
}

TEST_CASE("footprint of a full 16-bit dictionary of 16-byte entries") {
  Dictionary d(16, 16);
  // Base entries are 1 byte; fill the rest with 16-byte entries and account
  // separately for the 256 identity bytes.
  for (unsigned k = 0; k < 65536 - 256; ++k) d.append(fixture::filler(16, k));
  const Footprint f = d.footprint();
  CHECK(f.data_bytes == 256 + (65536 - 256) * 16);
  CHECK(f.data_bytes <= (std::size_t{1} << 20));
  CHECK(f.offsets_bytes == 4 * 65537);
  CHECK(f.total_bytes == f.data_bytes + f.offsets_bytes);
  CHECK(f.total_bytes <= std::size_t{5} << 18);  // 1.25 MiB
}

TEST_CASE("serialize round-trips") {
  SUBCASE("base") {
    const Dictionary d(16, 16);
    CHECK(Dictionary::deserialize(d.serialize()) == d);
  }
  SUBCASE("with abracad") {
    Dictionary d = fixture::abracad_dictionary(kUnboundedEntryLen);
    d.append("abracad");
    const Dictionary back = Dictionary::deserialize(d.serialize());
    CHECK(back == d);
    CHECK(back.token(793) == "abracad");
    CHECK(back.variant() == Variant::unbounded);
    CHECK(back.serialize() == d.serialize());
  }
  SUBCASE("trained, size matches an independent byte count") {
    const Corpus c = synthetic::markov_titles(200'000, 5);
    TrainerConfig cfg;
    cfg.bits_per_token = 12;
    const auto r = train(c, cfg);
    const auto bytes = r.dictionary.serialize();
    CHECK(bytes.size() - 12 == r.dictionary.footprint().total_bytes);
    CHECK(Dictionary::deserialize(bytes) == r.dictionary);
  }
}

TEST_CASE("deserialize rejects damaged streams") {
  Dictionary d(16, 16);
  d.append("hello");
  d.append("world");
  const auto good = d.serialize();
  auto with = [&](auto edit) {
    auto b = good;
    edit(b);
    return b;
  };
  auto put_u32 = [](std::vector<std::uint8_t>& b, std::size_t at, std::uint32_t v) { std::memcpy(&b[at], &v, 4); };

  CHECK_THROWS_AS(Dictionary::deserialize(with([](auto& b) { b[0] = 'X'; })), FormatError);
  CHECK_THROWS_AS(Dictionary::deserialize(with([](auto& b) { b[4] = 2; })), FormatError);
  CHECK_THROWS_AS(Dictionary::deserialize(with([](auto& b) { b[5] = 7; })), FormatError);
  CHECK_THROWS_AS(Dictionary::deserialize(with([](auto& b) { b[6] = 8; })), FormatError);
  CHECK_THROWS_AS(Dictionary::deserialize(with([](auto& b) { b[7] = 1; })), FormatError);
  CHECK_THROWS_AS(Dictionary::deserialize(with([&](auto& b) { put_u32(b, 8, 255); })), FormatError);
  // offsets[257] pushed below offsets[256]
  CHECK_THROWS_AS(Dictionary::deserialize(with([&](auto& b) { put_u32(b, 12 + 4 * 257, 200); })), FormatError);
  // 17-byte entry in a bounded dictionary
  CHECK_THROWS_AS(Dictionary::deserialize(with([&](auto& b) { put_u32(b, 12 + 4 * 257, 256 + 17); })), FormatError);
  // identity byte altered
  CHECK_THROWS_AS(Dictionary::deserialize(with([&](auto& b) { b[12 + 4 * 259 + 65] = 0; })), FormatError);
  CHECK_THROWS_AS(Dictionary::deserialize(with([](auto& b) { b.pop_back(); })), FormatError);
  CHECK_THROWS_AS(Dictionary::deserialize(with([](auto& b) { b.push_back(0); })), FormatError);
  CHECK_THROWS_AS(Dictionary::deserialize(std::vector<std::uint8_t>{}), FormatError);
}

TEST_CASE("token gain") {
  CHECK(token_gain(7, 10) == 43);
  CHECK(token_gain(2, 5) == -2);
  for (std::uint64_t f : {0u, 1u, 9u, 1000u}) CHECK(token_gain(1, f) == -static_cast<std::int64_t>(f) - 1);
}

}
