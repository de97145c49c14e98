#include "ssc/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "ssc/error.hpp"

namespace ssc {

std::string_view Corpus::at(std::size_t i) const {
  if (i >= size()) {
    throw LookupError("string index " + std::to_string(i) + " out of range (rows " + std::to_string(size()) + ")");
  }
  return (*this)[i];
}

Corpus Corpus::from_parts(std::string data, std::vector<std::uint64_t> boundaries, std::string name) {
  if (boundaries.empty() || boundaries.front() != 0 || boundaries.back() != data.size() ||
      !std::is_sorted(boundaries.begin(), boundaries.end())) {
    throw FormatError("corpus boundaries do not cover the data");
  }
  Corpus c(std::move(name));
  c.data_ = std::move(data);
  c.boundaries_ = std::move(boundaries);
  return c;
}

CorpusStats Corpus::stats() const noexcept {
  CorpusStats s;
  s.rows = size();
  s.size_mib = static_cast<double>(total_bytes()) / (1024.0 * 1024.0);
  s.avg_len_bytes = s.rows == 0 ? 0.0 : static_cast<double>(total_bytes()) / static_cast<double>(s.rows);
  return s;
}

Corpus parse_lines(std::string_view text, std::string name, std::optional<std::size_t> limit_bytes) {
  Corpus c(std::move(name));
  std::size_t consumed = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    const std::size_t next = nl == std::string_view::npos ? text.size() : nl + 1;
    if (limit_bytes && consumed + (next - pos) > *limit_bytes) break;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    c.push_back(line);
    consumed += next - pos;
    pos = next;
  }
  return c;
}

Corpus load_lines(const std::filesystem::path& path, std::optional<std::size_t> limit_bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string text;
  if (!limit_bytes) {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    text.resize(*limit_bytes);
    in.read(text.data(), static_cast<std::streamsize>(text.size()));
    text.resize(static_cast<std::size_t>(in.gcount()));
    // A line cut by the limit is dropped whole.
    if (text.size() == *limit_bytes && in.peek() != std::char_traits<char>::eof()) {
      const std::size_t last_nl = text.rfind('\n');
      text.resize(last_nl == std::string::npos ? 0 : last_nl + 1);
    }
  }
  if (in.bad()) throw std::runtime_error("read error on " + path.string());
  return parse_lines(text, path.filename().string());
}

void write_lines(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out << corpus[i] << '\n';
  }
  if (!out) throw std::runtime_error("write error on " + path.string());
}

}  // namespace ssc
