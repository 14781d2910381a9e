#pragma once

// GloVe trainer over the sparse co-occurrence matrix:
//   J = sum_{(i,j)} f(X_ij) (w_i . w~_j + b_i + b~_j - ln X_ij)^2
// minimized with AdaGrad over per-epoch shuffled entries. Hyperparameter
// defaults follow the reference GloVe release, so "GloVe" here means the
// semantics practitioners expect. Parallel training uses unsynchronized
// (hogwild) updates; deterministic mode forces a single thread and a fixed
// update order.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "embias/cooccur.hpp"
#include "embias/error.hpp"
#include "embias/vocab.hpp"

namespace embias {

struct TrainConfig {
  int dim = 200;
  double x_max = 100.0;
  double alpha = 0.75;
  double learning_rate = 0.05;
  int epochs = 15;
  uint64_t seed = 42;
  bool deterministic = false;
  unsigned threads = 0;  // 0 = machine parallelism; forced to 1 when deterministic

  void validate() const {
    if (dim < 1) throw UsageError("dim must be >= 1");
    if (!(alpha > 0.0) || alpha > 1.0) throw UsageError("alpha must be in (0, 1]");
    if (!(x_max > 0.0)) throw UsageError("x-max must be > 0");
    if (!(learning_rate > 0.0)) throw UsageError("learning rate must be > 0");
    if (epochs < 1) throw UsageError("epochs must be >= 1");
  }
};

// f(x) = min(1, (x/x_max)^alpha): discounts rare pairs, caps frequent ones.
inline double weight_fn(double x, double x_max, double alpha) {
  if (x >= x_max) return 1.0;
  if (x <= 0.0) return 0.0;
  return std::pow(x / x_max, alpha);
}

// Word vectors plus training state. A trained set carries main and context
// vectors with biases; a set loaded from a vectors file carries only the
// final vectors (context empty, checksum 0, not trainable).
class EmbeddingSet {
public:
  EmbeddingSet() = default;

  static EmbeddingSet zeros(std::vector<std::string> words, int dim,
                            uint64_t vocab_checksum) {
    EmbeddingSet e;
    e.words_ = std::move(words);
    e.dim_ = dim;
    e.vocab_checksum_ = vocab_checksum;
    e.main_.assign(e.words_.size() * static_cast<std::size_t>(dim), 0.0);
    e.context_ = e.main_;
    e.bias_main_.assign(e.words_.size(), 0.0);
    e.bias_context_.assign(e.words_.size(), 0.0);
    for (uint32_t i = 0; i < e.words_.size(); ++i) e.index_.emplace(e.words_[i], i);
    return e;
  }

  std::size_t size() const { return words_.size(); }
  int dim() const { return dim_; }
  uint64_t vocab_checksum() const { return vocab_checksum_; }
  bool trainable() const { return !context_.empty(); }

  const std::vector<std::string>& words() const { return words_; }
  const std::string& word(uint32_t id) const { return words_.at(id); }

  std::optional<uint32_t> id(const std::string& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const std::string& w) const { return index_.count(w) != 0; }

  std::span<double> main(uint32_t id) { return row(main_, id); }
  std::span<const double> main(uint32_t id) const { return row(main_, id); }
  std::span<double> context(uint32_t id) { return row(context_, id); }
  std::span<const double> context(uint32_t id) const { return row(context_, id); }
  double& bias_main(uint32_t id) { return bias_main_.at(id); }
  double bias_main(uint32_t id) const { return bias_main_.at(id); }
  double& bias_context(uint32_t id) { return bias_context_.at(id); }
  double bias_context(uint32_t id) const { return bias_context_.at(id); }

  // The vector the word is used with downstream: w + w~ for trained sets
  // (standard practice), w alone otherwise.
  std::vector<double> final(uint32_t id) const {
    auto m = main(id);
    std::vector<double> v(m.begin(), m.end());
    if (!context_.empty()) {
      auto c = context(id);
      for (int k = 0; k < dim_; ++k) v[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k)];
    }
    return v;
  }

  bool all_finite() const {
    auto ok = [](const std::vector<double>& v) {
      for (double x : v) {
        if (!std::isfinite(x)) return false;
      }
      return true;
    };
    return ok(main_) && ok(context_) && ok(bias_main_) && ok(bias_context_);
  }

  void save(const std::string& path, bool main_only = false) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write vectors file: " + path);
    char buf[40];
    for (uint32_t i = 0; i < size(); ++i) {
      out << words_[i];
      std::vector<double> v =
          main_only ? std::vector<double>(main(i).begin(), main(i).end()) : final(i);
      for (double c : v) {
        std::snprintf(buf, sizeof buf, " %.6g", c);
        out << buf;
      }
      out << '\n';
    }
    if (!out) throw DataError("failed writing vectors file: " + path);
  }

  static EmbeddingSet load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open vectors file: " + path);
    EmbeddingSet e;
    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto fail = [&](const std::string& what) -> void {
        throw DataError("vectors file " + path + " line " + std::to_string(line_no) +
                        ": " + what);
      };
      const std::size_t sp = line.find(' ');
      if (sp == std::string::npos || sp == 0) fail("expected 'word v1 ... vd'");
      std::string word = line.substr(0, sp);
      std::vector<double> comps;
      const char* p = line.data() + sp;
      const char* end = line.data() + line.size();
      while (p < end) {
        while (p < end && *p == ' ') ++p;
        if (p == end) break;
        double v = 0.0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc()) fail("malformed vector component");
        if (!std::isfinite(v)) fail("non-finite vector component");
        comps.push_back(v);
        p = next;
      }
      if (comps.empty()) fail("no vector components");
      if (e.dim_ == 0) {
        e.dim_ = static_cast<int>(comps.size());
      } else if (static_cast<int>(comps.size()) != e.dim_) {
        fail("expected " + std::to_string(e.dim_) + " components, found " +
             std::to_string(comps.size()));
      }
      if (e.index_.count(word) != 0) fail("duplicate word '" + word + "'");
      e.index_.emplace(word, static_cast<uint32_t>(e.words_.size()));
      e.words_.push_back(std::move(word));
      e.main_.insert(e.main_.end(), comps.begin(), comps.end());
    }
    if (e.words_.empty()) throw DataError("vectors file has no entries: " + path);
    return e;
  }

private:
  std::span<double> row(std::vector<double>& v, uint32_t id) {
    return {v.data() + static_cast<std::size_t>(id) * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<const double> row(const std::vector<double>& v, uint32_t id) const {
    return {v.data() + static_cast<std::size_t>(id) * dim_, static_cast<std::size_t>(dim_)};
  }

  std::vector<std::string> words_;
  std::unordered_map<std::string, uint32_t> index_;
  std::vector<double> main_;
  std::vector<double> context_;
  std::vector<double> bias_main_;
  std::vector<double> bias_context_;
  int dim_ = 0;
  uint64_t vocab_checksum_ = 0;
};

namespace detail {

inline void require_bound(const EmbeddingSet& e, const CooccurrenceMatrix& m) {
  if (!e.trainable()) {
    throw DataError("embedding set has no context vectors; load-only sets cannot "
                    "evaluate the training objective");
  }
  if (e.vocab_checksum() != m.vocab_checksum() || e.size() != m.vocab_size()) {
    throw DataError("vocabulary mismatch between embedding set and matrix");
  }
}

inline double residual(const EmbeddingSet& e, uint32_t i, uint32_t j, double x) {
  auto wi = e.main(i);
  auto cj = e.context(j);
  double r = e.bias_main(i) + e.bias_context(j) - std::log(x);
  for (std::size_t k = 0; k < wi.size(); ++k) r += wi[k] * cj[k];
  return r;
}

}  // namespace detail

// J over all (directed) stored entries.
inline double loss(const EmbeddingSet& e, const CooccurrenceMatrix& m,
                   const TrainConfig& cfg, unsigned threads = 1) {
  detail::require_bound(e, m);
  struct Entry {
    uint32_t i, j;
    double x;
  };
  std::vector<Entry> entries;
  entries.reserve(m.entry_count());
  m.for_each_entry([&](uint32_t i, uint32_t j, double x) { entries.push_back({i, j, x}); });
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  auto range_sum = [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
      const double r = detail::residual(e, entries[k].i, entries[k].j, entries[k].x);
      s += weight_fn(entries[k].x, cfg.x_max, cfg.alpha) * r * r;
    }
    return s;
  };
  if (threads <= 1 || entries.size() < 2) return range_sum(0, entries.size());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(entries.size()));
  std::vector<double> partial(threads, 0.0);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = entries.size() * t / threads;
    const std::size_t hi = entries.size() * (t + 1) / threads;
    workers.emplace_back([&, t, lo, hi]() { partial[t] = range_sum(lo, hi); });
  }
  for (auto& w : workers) w.join();
  double total = 0.0;
  for (double p : partial) total += p;  // fixed order, reproducible
  return total;
}

struct EntryGradients {
  std::vector<double> main;     // dJ/dw_i
  std::vector<double> context;  // dJ/dw~_j
  double bias_main = 0.0;
  double bias_context = 0.0;
};

// Analytic gradient of one entry's term: with r = w_i.w~_j + b_i + b~_j - ln x,
// dJ/dw_i = 2 f(x) r w~_j, dJ/dw~_j = 2 f(x) r w_i, both biases get 2 f(x) r.
inline EntryGradients gradients(const EmbeddingSet& e, uint32_t i, uint32_t j, double x,
                                const TrainConfig& cfg) {
  if (!(x > 0.0)) throw DataError("co-occurrence mass must be positive: ln(x) undefined");
  if (!e.trainable()) throw DataError("gradients require a trainable embedding set");
  const double g = 2.0 * weight_fn(x, cfg.x_max, cfg.alpha) * detail::residual(e, i, j, x);
  auto wi = e.main(i);
  auto cj = e.context(j);
  EntryGradients out;
  out.main.resize(wi.size());
  out.context.resize(wi.size());
  for (std::size_t k = 0; k < wi.size(); ++k) {
    out.main[k] = g * cj[k];
    out.context[k] = g * wi[k];
  }
  out.bias_main = g;
  out.bias_context = g;
  return out;
}

struct TrainResult {
  EmbeddingSet embeddings;
  std::vector<double> epoch_mean_loss;
};

using TrainProgress = std::function<void(int epoch, double mean_loss)>;

inline TrainResult train(const CooccurrenceMatrix& m, const Vocabulary& vocab,
                         const TrainConfig& cfg, const TrainProgress& progress = {}) {
  cfg.validate();
  if (m.empty()) throw DataError("co-occurrence matrix is empty; nothing to fit");
  if (m.vocab_checksum() != vocab.checksum() || m.vocab_size() != vocab.size()) {
    throw DataError("vocabulary mismatch between matrix and vocabulary");
  }

  const std::size_t v = vocab.size();
  const int dim = cfg.dim;
  EmbeddingSet e = EmbeddingSet::zeros(vocab.words(), dim, vocab.checksum());

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> init(-0.5 / dim, 0.5 / dim);
  for (uint32_t i = 0; i < v; ++i) {
    for (double& c : e.main(i)) c = init(rng);
  }
  for (uint32_t i = 0; i < v; ++i) {
    for (double& c : e.context(i)) c = init(rng);
  }
  for (uint32_t i = 0; i < v; ++i) e.bias_main(i) = init(rng);
  for (uint32_t i = 0; i < v; ++i) e.bias_context(i) = init(rng);

  // AdaGrad accumulators start at 1 so the first step is the plain rate.
  std::vector<double> gsq_main(v * static_cast<std::size_t>(dim), 1.0);
  std::vector<double> gsq_ctx(v * static_cast<std::size_t>(dim), 1.0);
  std::vector<double> gsq_bmain(v, 1.0);
  std::vector<double> gsq_bctx(v, 1.0);

  struct Entry {
    uint32_t i, j;
    double x;
  };
  std::vector<Entry> entries;
  entries.reserve(m.entry_count());
  m.for_each_entry([&](uint32_t i, uint32_t j, double x) { entries.push_back({i, j, x}); });
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });

  unsigned threads = 1;
  if (!cfg.deterministic) {
    threads = cfg.threads != 0 ? cfg.threads
                               : std::max(1u, std::thread::hardware_concurrency());
  }

  // One AdaGrad step; denominators read the pre-update accumulator, then the
  // squared (rate-scaled) gradient is added, as in the reference release.
  auto step = [&](const Entry& en, int epoch) -> double {
    const double f = weight_fn(en.x, cfg.x_max, cfg.alpha);
    const double r = detail::residual(e, en.i, en.j, en.x);
    const double cost = f * r * r;
    const double fdiff = f * r * cfg.learning_rate;
    if (!std::isfinite(fdiff)) {
      throw DataError("non-finite update at epoch " + std::to_string(epoch) +
                      " for entry (" + e.word(en.i) + ", " + e.word(en.j) + ")");
    }
    auto wi = e.main(en.i);
    auto cj = e.context(en.j);
    double* gm = gsq_main.data() + static_cast<std::size_t>(en.i) * dim;
    double* gc = gsq_ctx.data() + static_cast<std::size_t>(en.j) * dim;
    for (int k = 0; k < dim; ++k) {
      const double t1 = fdiff * cj[static_cast<std::size_t>(k)];
      const double t2 = fdiff * wi[static_cast<std::size_t>(k)];
      wi[static_cast<std::size_t>(k)] -= t1 / std::sqrt(gm[k]);
      cj[static_cast<std::size_t>(k)] -= t2 / std::sqrt(gc[k]);
      gm[k] += t1 * t1;
      gc[k] += t2 * t2;
    }
    e.bias_main(en.i) -= fdiff / std::sqrt(gsq_bmain[en.i]);
    e.bias_context(en.j) -= fdiff / std::sqrt(gsq_bctx[en.j]);
    gsq_bmain[en.i] += fdiff * fdiff;
    gsq_bctx[en.j] += fdiff * fdiff;
    return cost;
  };

  TrainResult result;
  result.epoch_mean_loss.reserve(static_cast<std::size_t>(cfg.epochs));
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(entries.begin(), entries.end(), rng);
    double total = 0.0;
    if (threads == 1) {
      for (const Entry& en : entries) total += step(en, epoch);
    } else {
      std::vector<double> partial(threads, 0.0);
      std::vector<std::exception_ptr> errors(threads);
      std::vector<std::thread> workers;
      workers.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = entries.size() * t / threads;
        const std::size_t hi = entries.size() * (t + 1) / threads;
        workers.emplace_back([&, t, lo, hi]() {
          try {
            double s = 0.0;
            for (std::size_t k = lo; k < hi; ++k) s += step(entries[k], epoch);
            partial[t] = s;
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
      for (auto& w : workers) w.join();
      for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
      }
      for (double p : partial) total += p;
    }
    const double mean = total / static_cast<double>(entries.size());
    result.epoch_mean_loss.push_back(mean);
    if (progress) progress(epoch, mean);
  }

  result.embeddings = std::move(e);
  return result;
}

}  // namespace embias
