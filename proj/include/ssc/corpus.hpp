#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssc {

struct CorpusStats {
  double size_mib = 0;
  std::size_t rows = 0;
  double avg_len_bytes = 0;
};

// An immutable column of byte strings stored back to back.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::string name) : name_(std::move(name)) {}

  template <typename Range>
  static Corpus from_strings(const Range& strings, std::string name = "memory") {
    Corpus c(std::move(name));
    for (const auto& s : strings) c.push_back(std::string_view(s));
    return c;
  }

  // Takes ownership of prebuilt storage. Throws FormatError if the
  // boundaries are not a non-decreasing cover of data starting at 0.
  static Corpus from_parts(std::string data, std::vector<std::uint64_t> boundaries, std::string name = "memory");

  void push_back(std::string_view s) {
    data_.append(s);
    boundaries_.push_back(data_.size());
  }

  std::size_t size() const noexcept { return boundaries_.size() - 1; }
  bool empty() const noexcept { return size() == 0; }
  std::size_t total_bytes() const noexcept { return boundaries_.back(); }

  std::string_view operator[](std::size_t i) const noexcept {
    return std::string_view(data_).substr(boundaries_[i], boundaries_[i + 1] - boundaries_[i]);
  }

  // Throws LookupError when i >= size().
  std::string_view at(std::size_t i) const;

  std::span<const std::uint64_t> boundaries() const noexcept { return boundaries_; }
  std::string_view data() const noexcept { return data_; }
  const std::string& name() const noexcept { return name_; }

  CorpusStats stats() const noexcept;

 private:
  std::string name_ = "memory";
  std::string data_;
  std::vector<std::uint64_t> boundaries_{0};
};

// Splits on LF, drops one trailing CR per line, and does not emit an empty
// record after a final LF. With limit_bytes set, stops before the first line
// that would cross the limit. Throws std::runtime_error on I/O failure.
Corpus load_lines(const std::filesystem::path& path, std::optional<std::size_t> limit_bytes = std::nullopt);

// Same rules applied to an in-memory buffer.
Corpus parse_lines(std::string_view text, std::string name = "memory",
                   std::optional<std::size_t> limit_bytes = std::nullopt);

// Writes each string followed by LF.
void write_lines(const std::filesystem::path& path, const Corpus& corpus);

}  // namespace ssc
