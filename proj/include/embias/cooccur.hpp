#pragma once

// Windowed co-occurrence counting. For each token and each offset k <= window
// within the same document, mass m (1 or 1/k) is added to both directed cells
// (w_t, w_{t+k}) and (w_{t+k}, w_t). The matrix is logically symmetric; cells
// are stored once in canonical (min,max) form. Out-of-vocabulary tokens are
// removed before the window slides, so window semantics do not depend on
// min_count.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "embias/corpus.hpp"
#include "embias/error.hpp"
#include "embias/vocab.hpp"

namespace embias {

enum class Weighting : uint8_t { Uniform = 0, InverseDistance = 1 };

inline const char* weighting_name(Weighting w) {
  return w == Weighting::Uniform ? "uniform" : "inverse-distance";
}

namespace detail {

inline uint64_t cell_key(uint32_t i, uint32_t j) {
  return (static_cast<uint64_t>(i) << 32) | j;
}

inline void write_le(std::ostream& out, uint64_t v, int bytes) {
  char buf[8];
  for (int k = 0; k < bytes; ++k) buf[k] = static_cast<char>((v >> (8 * k)) & 0xFF);
  out.write(buf, bytes);
}

inline bool read_le(std::istream& in, uint64_t& v, int bytes) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), bytes)) return false;
  v = 0;
  for (int k = 0; k < bytes; ++k) v |= static_cast<uint64_t>(buf[k]) << (8 * k);
  return true;
}

}  // namespace detail

class CooccurrenceMatrix {
public:
  CooccurrenceMatrix() = default;
  CooccurrenceMatrix(std::unordered_map<uint64_t, double> cells, uint32_t vocab_size,
                     uint16_t window, Weighting weighting, uint64_t vocab_checksum)
      : cells_(std::move(cells)),
        vocab_size_(vocab_size),
        window_(window),
        weighting_(weighting),
        vocab_checksum_(vocab_checksum) {
    row_sums_.assign(vocab_size_, 0.0);
    for (const auto& [key, x] : cells_) {
      uint32_t i = static_cast<uint32_t>(key >> 32);
      uint32_t j = static_cast<uint32_t>(key);
      row_sums_[i] += x;
      if (j != i) row_sums_[j] += x;
    }
  }

  uint32_t vocab_size() const { return vocab_size_; }
  uint16_t window() const { return window_; }
  Weighting weighting() const { return weighting_; }
  uint64_t vocab_checksum() const { return vocab_checksum_; }

  // X_ij (== X_ji). Absent cells are 0.
  double get(uint32_t i, uint32_t j) const {
    if (j < i) std::swap(i, j);
    auto it = cells_.find(detail::cell_key(i, j));
    return it == cells_.end() ? 0.0 : it->second;
  }

  // X_i = sum_k X_ki.
  double row_sum(uint32_t i) const { return row_sums_.at(i); }

  double total_mass() const {
    double t = 0.0;
    for (double r : row_sums_) t += r;
    return t;
  }

  // Number of logical (directed) nonzero entries.
  std::size_t entry_count() const {
    std::size_t n = 0;
    for (const auto& [key, x] : cells_) {
      (void)x;
      n += (static_cast<uint32_t>(key >> 32) == static_cast<uint32_t>(key)) ? 1 : 2;
    }
    return n;
  }

  bool empty() const { return cells_.empty(); }

  // Visits every logical entry (i, j, x): mirrored cells are visited in both
  // orders, diagonal cells once.
  template <typename F>
  void for_each_entry(F&& f) const {
    for (const auto& [key, x] : cells_) {
      uint32_t i = static_cast<uint32_t>(key >> 32);
      uint32_t j = static_cast<uint32_t>(key);
      f(i, j, x);
      if (i != j) f(j, i, x);
    }
  }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write matrix file: " + path);
    out.write("COOC1", 5);
    detail::write_le(out, vocab_size_, 4);
    detail::write_le(out, window_, 2);
    detail::write_le(out, static_cast<uint8_t>(weighting_), 1);
    detail::write_le(out, vocab_checksum_, 8);
    std::vector<std::pair<uint64_t, double>> records;
    records.reserve(entry_count());
    for_each_entry([&](uint32_t i, uint32_t j, double x) {
      records.emplace_back(detail::cell_key(i, j), x);
    });
    std::sort(records.begin(), records.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [key, x] : records) {
      detail::write_le(out, key >> 32, 4);
      detail::write_le(out, static_cast<uint32_t>(key), 4);
      detail::write_le(out, std::bit_cast<uint64_t>(x), 8);
    }
    if (!out) throw DataError("failed writing matrix file: " + path);
  }

  static CooccurrenceMatrix load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open matrix file: " + path);
    char magic[5];
    if (!in.read(magic, 5) || std::memcmp(magic, "COOC1", 5) != 0) {
      throw DataError("not a co-occurrence matrix file (bad magic): " + path);
    }
    uint64_t v = 0, window = 0, weighting = 0, checksum = 0;
    if (!detail::read_le(in, v, 4) || !detail::read_le(in, window, 2) ||
        !detail::read_le(in, weighting, 1) || !detail::read_le(in, checksum, 8)) {
      throw DataError("truncated matrix header: " + path);
    }
    if (weighting > 1) throw DataError("unknown weighting code in matrix file: " + path);
    std::unordered_map<uint64_t, double> cells;
    uint64_t iv = 0, jv = 0, bits = 0;
    while (detail::read_le(in, iv, 4)) {
      if (!detail::read_le(in, jv, 4) || !detail::read_le(in, bits, 8)) {
        throw DataError("truncated matrix record: " + path);
      }
      if (iv >= v || jv >= v) throw DataError("matrix record out of vocabulary range: " + path);
      double x = std::bit_cast<double>(bits);
      if (!(x > 0.0)) throw DataError("matrix record with non-positive mass: " + path);
      uint32_t i = static_cast<uint32_t>(iv), j = static_cast<uint32_t>(jv);
      if (i <= j) {
        cells[detail::cell_key(i, j)] = x;
      } else {
        auto it = cells.find(detail::cell_key(j, i));
        if (it == cells.end() || it->second != x) {
          throw DataError("asymmetric record pair in matrix file: " + path);
        }
      }
    }
    return CooccurrenceMatrix(std::move(cells), static_cast<uint32_t>(v),
                              static_cast<uint16_t>(window),
                              static_cast<Weighting>(weighting), checksum);
  }

private:
  std::unordered_map<uint64_t, double> cells_;
  std::vector<double> row_sums_;
  uint32_t vocab_size_ = 0;
  uint16_t window_ = 0;
  Weighting weighting_ = Weighting::InverseDistance;
  uint64_t vocab_checksum_ = 0;
};

// Single-threaded accumulator for one document shard. Shards merge by
// entrywise sum, so counting is associative over any document partition.
class CooccurrenceAccumulator {
public:
  CooccurrenceAccumulator(int window, Weighting weighting)
      : window_(window), weighting_(weighting) {
    if (window < 1) throw UsageError("context window must be >= 1");
  }

  // ids: in-vocabulary token ids of one document, OOV already removed.
  void add_document(const std::vector<uint32_t>& ids) {
    const std::size_t n = ids.size();
    for (std::size_t t = 0; t + 1 < n; ++t) {
      const std::size_t limit = std::min(n - 1 - t, static_cast<std::size_t>(window_));
      for (std::size_t k = 1; k <= limit; ++k) {
        const double m =
            weighting_ == Weighting::Uniform ? 1.0 : 1.0 / static_cast<double>(k);
        const uint32_t a = ids[t], b = ids[t + k];
        if (a == b) {
          cells_[detail::cell_key(a, a)] += 2.0 * m;  // both directed cells coincide
        } else {
          cells_[detail::cell_key(std::min(a, b), std::max(a, b))] += m;
        }
      }
    }
  }

  void merge(CooccurrenceAccumulator&& other) {
    if (cells_.size() < other.cells_.size()) cells_.swap(other.cells_);
    for (const auto& [key, x] : other.cells_) cells_[key] += x;
    other.cells_.clear();
  }

  CooccurrenceMatrix finalize(const Vocabulary& vocab) && {
    return CooccurrenceMatrix(std::move(cells_), static_cast<uint32_t>(vocab.size()),
                              static_cast<uint16_t>(window_), weighting_,
                              vocab.checksum());
  }

  int window() const { return window_; }
  Weighting weighting() const { return weighting_; }

private:
  std::unordered_map<uint64_t, double> cells_;
  int window_;
  Weighting weighting_;
};

namespace detail {

inline std::vector<uint32_t> to_vocab_ids(const std::vector<std::string>& tokens,
                                          const Vocabulary& vocab) {
  std::vector<uint32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& tok : tokens) {
    if (auto id = vocab.id(tok)) ids.push_back(*id);
  }
  return ids;
}

}  // namespace detail

// Streams the corpus once and counts in parallel: documents are assigned to
// shards by their global index, each shard owns a private accumulator, and
// shards merge in fixed order, so the result is reproducible for a given
// thread count. threads == 0 picks the machine parallelism.
inline CooccurrenceMatrix count_cooccurrences(const CorpusSource& source,
                                              const Vocabulary& vocab, int window,
                                              Weighting weighting,
                                              unsigned threads = 0) {
  if (window < 1) throw UsageError("context window must be >= 1");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<CooccurrenceAccumulator> shards;
  shards.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) shards.emplace_back(window, weighting);

  DocumentReader reader(source);
  constexpr std::size_t kChunkDocs = 4096;
  std::vector<std::vector<uint32_t>> chunk;
  chunk.reserve(kChunkDocs);
  uint64_t base_index = 0;

  auto process_chunk = [&]() {
    if (chunk.empty()) return;
    if (threads == 1) {
      for (const auto& ids : chunk) shards[0].add_document(ids);
    } else {
      std::vector<std::thread> workers;
      workers.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t]() {
          for (std::size_t d = 0; d < chunk.size(); ++d) {
            if ((base_index + d) % threads == t) shards[t].add_document(chunk[d]);
          }
        });
      }
      for (auto& w : workers) w.join();
    }
    base_index += chunk.size();
    chunk.clear();
  };

  while (auto doc = reader.next()) {
    chunk.push_back(detail::to_vocab_ids(doc->tokens, vocab));
    if (chunk.size() >= kChunkDocs) process_chunk();
  }
  process_chunk();

  for (unsigned t = 1; t < threads; ++t) shards[0].merge(std::move(shards[t]));
  return std::move(shards[0]).finalize(vocab);
}

// P(j|i) = X_ji / X_i, the probability of seeing word j in word i's context.
inline double cooccur_probability(const CooccurrenceMatrix& m, uint32_t j, uint32_t i) {
  const double xi = m.row_sum(i);
  if (xi <= 0.0) {
    throw DataError("word id " + std::to_string(i) + " never observed in any context");
  }
  return m.get(j, i) / xi;
}

// P(k|i) / P(k|j): how much more word k frequents i's contexts than j's.
// Diagnostic quantity; not used in training.
inline double probability_ratio(const CooccurrenceMatrix& m, uint32_t i, uint32_t j,
                                uint32_t k) {
  const double num = cooccur_probability(m, k, i);
  const double den = cooccur_probability(m, k, j);
  if (den == 0.0) {
    throw DataError("probability ratio undefined: P(k|j) = 0 for j = " + std::to_string(j));
  }
  return num / den;
}

}  // namespace embias
