#pragma once

#include <cstddef>
#include <cstdint>

#include "ssc/corpus.hpp"

namespace ssc::synthetic {

// Catalog-style lines (titles with series numbers, subtitles and years) drawn
// from a first-order word Markov chain over a generated vocabulary with
// Zipf-distributed word and successor choices. Generates lines until the
// corpus holds at least target_bytes. Output depends only on the seed.
Corpus markov_titles(std::size_t target_bytes, std::uint64_t seed);

// Lines made of `phrase_count` fixed random phrases of `phrase_len` bytes,
// each line 1-4 phrases long.
Corpus repeated_phrases(std::size_t lines, std::size_t phrase_len, std::size_t phrase_count, std::uint64_t seed);

// Strings of uniformly random bytes over an alphabet of `alphabet` symbols
// starting at `first_symbol`, with lengths uniform in [0, max_len].
Corpus random_strings(std::size_t count, std::size_t max_len, unsigned alphabet, std::uint8_t first_symbol,
                      std::uint64_t seed);

}  // namespace ssc::synthetic
