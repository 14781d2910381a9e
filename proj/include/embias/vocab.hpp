#pragma once

// Vocabulary: word <-> id map with corpus frequencies. Ids are assigned by
// descending corpus frequency (ties broken lexicographically), so id order is
// also frequency order in every downstream artifact.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "embias/corpus.hpp"
#include "embias/error.hpp"

namespace embias {

namespace detail {

inline uint64_t fnv1a_update(uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline uint64_t fnv1a_update(uint64_t h, uint64_t v) {
  for (int k = 0; k < 8; ++k) {
    h ^= (v >> (8 * k)) & 0xFF;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

class Vocabulary {
public:
  Vocabulary() = default;

  // words must already be ordered by (count desc, word asc).
  Vocabulary(std::vector<std::string> words, std::vector<uint64_t> counts,
             uint64_t min_count)
      : words_(std::move(words)), counts_(std::move(counts)), min_count_(min_count) {
    index_.reserve(words_.size());
    for (uint32_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
  }

  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  const std::string& word(uint32_t id) const { return words_.at(id); }
  uint64_t count(uint32_t id) const { return counts_.at(id); }
  uint64_t min_count() const { return min_count_; }

  std::optional<uint32_t> id(std::string_view w) const {
    auto it = index_.find(std::string(w));
    return it == index_.end() ? std::nullopt : std::optional<uint32_t>(it->second);
  }

  bool contains(std::string_view w) const { return id(w).has_value(); }

  // Binds downstream artifacts (matrix, embeddings) to this exact vocabulary.
  uint64_t checksum() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      h = detail::fnv1a_update(h, words_[i]);
      h = detail::fnv1a_update(h, counts_[i]);
    }
    return h;
  }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write vocabulary file: " + path);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      out << words_[i] << '\t' << counts_[i] << '\n';
    }
    if (!out) throw DataError("failed writing vocabulary file: " + path);
  }

  static Vocabulary load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open vocabulary file: " + path);
    std::vector<std::string> words;
    std::vector<uint64_t> counts;
    std::string line;
    uint64_t line_no = 0;
    uint64_t min_count = UINT64_MAX;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos || tab == 0) {
        throw DataError("vocabulary file " + path + " line " + std::to_string(line_no) +
                        ": expected 'word<TAB>count'");
      }
      uint64_t count = 0;
      try {
        count = std::stoull(line.substr(tab + 1));
      } catch (const std::exception&) {
        throw DataError("vocabulary file " + path + " line " + std::to_string(line_no) +
                        ": bad count");
      }
      words.push_back(line.substr(0, tab));
      counts.push_back(count);
      min_count = std::min(min_count, count);
    }
    if (words.empty()) throw DataError("vocabulary file is empty: " + path);
    return Vocabulary(std::move(words), std::move(counts), min_count);
  }

private:
  std::vector<std::string> words_;
  std::vector<uint64_t> counts_;
  std::unordered_map<std::string, uint32_t> index_;
  uint64_t min_count_ = 1;
};

// Counts token frequencies over one streaming pass and keeps words whose
// count reaches min_count.
inline Vocabulary build_vocab(const CorpusSource& source, uint64_t min_count) {
  if (min_count < 1) throw UsageError("min_count must be >= 1");
  std::unordered_map<std::string, uint64_t> freq;
  DocumentReader reader(source);
  while (auto doc = reader.next()) {
    for (auto& tok : doc->tokens) ++freq[tok];
  }
  std::vector<std::pair<std::string, uint64_t>> kept;
  kept.reserve(freq.size());
  for (auto& [word, count] : freq) {
    if (count >= min_count) kept.emplace_back(word, count);
  }
  if (kept.empty()) {
    throw DataError("empty vocabulary: no token of " + source.path +
                    " reaches min_count " + std::to_string(min_count));
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> words;
  std::vector<uint64_t> counts;
  words.reserve(kept.size());
  counts.reserve(kept.size());
  for (auto& [word, count] : kept) {
    words.push_back(std::move(word));
    counts.push_back(count);
  }
  return Vocabulary(std::move(words), std::move(counts), min_count);
}

}  // namespace embias
