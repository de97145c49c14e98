#include "ssc/synthetic.hpp"

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "ssc/rng.hpp"

namespace ssc::synthetic {

namespace {

constexpr std::array<std::string_view, 48> kSyllables = {
    "an", "ber", "ca", "dor", "el", "fa", "gin", "ha", "is", "jo", "ka", "lin", "ma", "ne", "or", "pa",
    "qui", "ro", "sa", "ten", "ul", "ver", "wen", "xa", "yo", "zan", "the", "ing", "er", "on", "at", "ion",
    "st", "re", "mo", "di", "lu", "tra", "ge", "ny", "sh", "ph", "ar", "en", "ol", "ti", "ca", "ry"};

constexpr std::array<std::string_view, 16> kConnectors = {"of", "the", "and", "in", "a", "to", "for", "with",
                                                          "on", "from", "The", "A", "by", "at", "my", "your"};

constexpr std::size_t kVocabulary = 50000;
constexpr std::size_t kSuccessors = 16;
// Probability that the next word follows the chain rather than the unigram
// distribution.
constexpr double kFollowChain = 0.1;

// Zipf(s = 1) sampler over [0, n) via the inverse of the harmonic CDF table.
class Zipf {
 public:
  explicit Zipf(std::size_t n) : cdf_(n) {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      total += 1.0 / static_cast<double>(i + 1);
      cdf_[i] = total;
    }
    for (double& c : cdf_) c /= total;
  }
  std::size_t operator()(Rng& rng) const {
    const double u = rng.unit();
    std::size_t lo = 0;
    std::size_t hi = cdf_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cdf_[mid] < u) lo = mid + 1; else hi = mid;
    }
    return lo;
  }

 private:
  std::vector<double> cdf_;
};

std::string make_word(Rng& rng) {
  std::string w;
  const auto syllables = rng.between(1, 4);
  for (std::uint64_t i = 0; i < syllables; ++i) w += kSyllables[rng.below(kSyllables.size())];
  if (rng.chance(0.3)) w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

}  // namespace

Corpus markov_titles(std::size_t target_bytes, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> vocab;
  vocab.reserve(kVocabulary + kConnectors.size());
  for (std::string_view c : kConnectors) vocab.emplace_back(c);
  while (vocab.size() < kVocabulary) vocab.push_back(make_word(rng));

  std::vector<std::array<std::uint32_t, kSuccessors>> successors(vocab.size());
  const Zipf pick_word(vocab.size());
  for (auto& next : successors) {
    for (auto& n : next) n = static_cast<std::uint32_t>(pick_word(rng));
  }
  const Zipf pick_successor(kSuccessors);

  Corpus corpus("markov_titles");
  std::string line;
  while (corpus.total_bytes() < target_bytes) {
    line.clear();
    std::size_t word = pick_word(rng);
    const auto words = rng.between(2, 12);
    for (std::uint64_t i = 0; i < words; ++i) {
      if (i != 0) line += (i == 3 && rng.chance(0.2)) ? ": " : " ";
      line += vocab[word];
      word = rng.chance(kFollowChain) ? successors[word][pick_successor(rng)] : pick_word(rng);
    }
    if (rng.chance(0.25)) {
      line += " (Book " + std::to_string(rng.between(1, 12)) + ")";
    }
    if (rng.chance(0.15)) {
      line += ", " + std::to_string(rng.between(1950, 2024));
    }
    corpus.push_back(line);
  }
  return corpus;
}

Corpus repeated_phrases(std::size_t lines, std::size_t phrase_len, std::size_t phrase_count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> phrases(phrase_count);
  for (auto& p : phrases) {
    p.resize(phrase_len);
    for (char& c : p) c = static_cast<char>('a' + rng.below(26));
  }
  Corpus corpus("repeated_phrases");
  std::string line;
  for (std::size_t i = 0; i < lines; ++i) {
    line.clear();
    const auto n = rng.between(1, 4);
    for (std::uint64_t k = 0; k < n; ++k) line += phrases[rng.below(phrase_count)];
    corpus.push_back(line);
  }
  return corpus;
}

Corpus random_strings(std::size_t count, std::size_t max_len, unsigned alphabet, std::uint8_t first_symbol,
                      std::uint64_t seed) {
  Rng rng(seed);
  Corpus corpus("random_strings");
  std::string s;
  for (std::size_t i = 0; i < count; ++i) {
    s.resize(rng.between(0, max_len));
    for (char& c : s) c = static_cast<char>(first_symbol + rng.below(alphabet));
    corpus.push_back(s);
  }
  return corpus;
}

}  // namespace ssc::synthetic
