#pragma once

// Word-embedding association test. For target sets X, Y and attribute sets
// A, B:
//   s(w,A,B) = mean_{a in A} cos(w,a) - mean_{b in B} cos(w,b)
//   S(X,Y,A,B) = sum_{x in X} s(x) - sum_{y in Y} s(y)
//   d = (mean_X s - mean_Y s) / stddev_{X u Y} s        (sample, n-1)
// Significance is a two-tailed partition test: among equal-size partitions of
// X u Y, the fraction whose statistic strictly exceeds |S|. All partitions are
// enumerated when their count is at most kExactPartitionLimit; otherwise
// uniform random partitions are sampled with add-one smoothing.
//
// The per-attribute decomposition mirrors the reporting convention of
// association audits: raw sums sim(T,C) = sum_{t in T} mean_{c in C} cos(t,c)
// for every target/attribute pairing, each X-vs-Y contrast carrying its own
// effect size and partition p-value.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "embias/error.hpp"
#include "embias/glove.hpp"
#include "embias/wordsets.hpp"

namespace embias {

// C(20,10): the largest partition count enumerated exactly.
constexpr uint64_t kExactPartitionLimit = 184756;

inline double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size() || u.empty()) {
    throw DataError("cosine: vectors must share a positive dimension");
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    dot += u[k] * v[k];
    nu += u[k] * u[k];
    nv += v[k] * v[k];
  }
  if (nu == 0.0 || nv == 0.0) {
    throw DataError("cosine undefined direction: zero vector");
  }
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

namespace detail {

// Final vectors fetched once per word; errors carry the offending word.
class FinalVectors {
public:
  explicit FinalVectors(const EmbeddingSet& e) : e_(&e) {}

  const std::vector<double>& get(const std::string& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    auto id = e_->id(w);
    if (!id) throw DataError("word not in embedding vocabulary: '" + w + "'");
    auto [ins, inserted] = cache_.emplace(w, e_->final(*id));
    (void)inserted;
    return ins->second;
  }

private:
  const EmbeddingSet* e_;
  std::unordered_map<std::string, std::vector<double>> cache_;
};

inline double mean_cos(FinalVectors& fv, const std::string& w,
                       const std::vector<std::string>& set) {
  const auto& u = fv.get(w);
  double s = 0.0;
  for (const auto& a : set) s += cosine(u, fv.get(a));
  return s / static_cast<double>(set.size());
}

inline double assoc_s_cached(FinalVectors& fv, const std::string& w,
                             const std::vector<std::string>& A,
                             const std::vector<std::string>& B) {
  return mean_cos(fv, w, A) - mean_cos(fv, w, B);
}

// C(n,k), saturating at cap+1 so huge counts never overflow.
inline uint64_t binomial_capped(std::size_t n, std::size_t k, uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;  // exact at every step: c is C(n-k+i, i)
    if (c > cap) return cap + 1;
  }
  return c;
}

inline double sample_stddev(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (n - 1.0));
}

}  // namespace detail

struct PValue {
  double p = 0.0;
  bool exact = false;
  uint64_t evaluations = 0;  // partitions enumerated, or shuffles taken
};

namespace detail {

// scores holds the pooled per-word values, the first nx from the observed X
// side. Two-tailed count: a partition is a hit when its |statistic| strictly
// exceeds |observed|. Subset and complement are summed in ascending index
// order, so the identity partition reproduces the observed statistic
// bit-for-bit and is never counted.
inline PValue partition_test(const std::vector<double>& scores, std::size_t nx,
                             double observed, uint64_t n_shuffles, uint64_t seed) {
  const std::size_t n = scores.size();
  if (nx == 0 || nx >= n) throw DataError("partition test needs two nonempty sides");
  const double bar = std::fabs(observed);
  const uint64_t partitions = binomial_capped(n, nx, kExactPartitionLimit);
  PValue out;
  if (partitions <= kExactPartitionLimit) {
    out.exact = true;
    out.evaluations = partitions;
    uint64_t hits = 0;
    std::vector<std::size_t> idx(nx);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
      double sx = 0.0, sy = 0.0;
      std::size_t p = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (p < nx && idx[p] == i) {
          sx += scores[i];
          ++p;
        } else {
          sy += scores[i];
        }
      }
      if (std::fabs(sx - sy) > bar) ++hits;
      std::size_t i = nx;
      while (i > 0 && idx[i - 1] == n - nx + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < nx; ++j) idx[j] = idx[j - 1] + 1;
    }
    out.p = static_cast<double>(hits) / static_cast<double>(partitions);
  } else {
    out.exact = false;
    out.evaluations = n_shuffles;
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<char> in_x(n, 0);
    uint64_t hits = 0;
    for (uint64_t shuffle = 0; shuffle < n_shuffles; ++shuffle) {
      for (std::size_t i = 0; i < nx; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(order[i], order[pick(rng)]);
      }
      std::fill(in_x.begin(), in_x.end(), 0);
      for (std::size_t i = 0; i < nx; ++i) in_x[order[i]] = 1;
      double sx = 0.0, sy = 0.0;
      for (std::size_t i = 0; i < n; ++i) (in_x[i] ? sx : sy) += scores[i];
      if (std::fabs(sx - sy) > bar) ++hits;
    }
    out.p = static_cast<double>(hits + 1) / static_cast<double>(n_shuffles + 1);
  }
  return out;
}

}  // namespace detail

inline double assoc_s(const std::string& w, const std::vector<std::string>& A,
                      const std::vector<std::string>& B, const EmbeddingSet& e) {
  if (A.empty() || B.empty()) throw DataError("attribute sets must be nonempty");
  detail::FinalVectors fv(e);
  return detail::assoc_s_cached(fv, w, A, B);
}

// Sum over T of s(t,A,B); callers divide by |T| for the mean.
inline double net_similarity(const std::vector<std::string>& T,
                             const std::vector<std::string>& A,
                             const std::vector<std::string>& B, const EmbeddingSet& e) {
  if (A.empty() || B.empty()) throw DataError("attribute sets must be nonempty");
  detail::FinalVectors fv(e);
  double s = 0.0;
  for (const auto& t : T) s += detail::assoc_s_cached(fv, t, A, B);
  return s;
}

// S(X,Y,A,B) = net_similarity(X) - net_similarity(Y); positive S means X
// leans toward A more than Y does.
inline double test_statistic(const WordSets& ws, const EmbeddingSet& e) {
  return net_similarity(ws.X, ws.A, ws.B, e) - net_similarity(ws.Y, ws.A, ws.B, e);
}

inline double effect_size(const WordSets& ws, const EmbeddingSet& e) {
  if (ws.X.size() + ws.Y.size() < 3) {
    throw DataError("effect size needs at least 3 pooled target words");
  }
  detail::FinalVectors fv(e);
  std::vector<double> pooled;
  pooled.reserve(ws.X.size() + ws.Y.size());
  double sum_x = 0.0, sum_y = 0.0;
  for (const auto& x : ws.X) {
    pooled.push_back(detail::assoc_s_cached(fv, x, ws.A, ws.B));
    sum_x += pooled.back();
  }
  for (const auto& y : ws.Y) {
    pooled.push_back(detail::assoc_s_cached(fv, y, ws.A, ws.B));
    sum_y += pooled.back();
  }
  const double sd = detail::sample_stddev(pooled);
  if (sd == 0.0) throw DataError("effect size degenerate: no spread in association scores");
  return (sum_x / static_cast<double>(ws.X.size()) -
          sum_y / static_cast<double>(ws.Y.size())) /
         sd;
}

inline PValue permutation_pvalue(const WordSets& ws, const EmbeddingSet& e,
                                 uint64_t n_shuffles, uint64_t seed) {
  if (n_shuffles < 1) throw UsageError("shuffle count must be >= 1");
  if (ws.X.size() != ws.Y.size()) {
    throw DataError("partition test requires |X| = |Y| (got " +
                    std::to_string(ws.X.size()) + " vs " + std::to_string(ws.Y.size()) +
                    ")");
  }
  detail::FinalVectors fv(e);
  std::vector<double> scores;
  scores.reserve(ws.X.size() + ws.Y.size());
  double net_x = 0.0, net_y = 0.0;
  for (const auto& x : ws.X) {
    scores.push_back(detail::assoc_s_cached(fv, x, ws.A, ws.B));
    net_x += scores.back();
  }
  for (const auto& y : ws.Y) {
    scores.push_back(detail::assoc_s_cached(fv, y, ws.A, ws.B));
    net_y += scores.back();
  }
  return detail::partition_test(scores, ws.X.size(), net_x - net_y, n_shuffles, seed);
}

struct SetResolution {
  std::vector<std::string> missing;  // absent from the embedding vocabulary
  std::vector<std::string> trimmed;  // dropped to equalize target sizes
};

struct Resolution {
  SetResolution X, Y, A, B;
  std::vector<std::string> warnings;
};

struct ResolvedSets {
  WordSets sets;  // the words actually used
  Resolution report;
};

// Missing words are dropped from every set with a warning; if that leaves the
// target sets unequal they are trimmed to the smaller size by dropping the
// least-frequent words (embedding order is frequency order, so highest id =
// rarest). strict turns any missing word into an error.
inline ResolvedSets resolve_sets(const WordSets& ws, const EmbeddingSet& e,
                                 bool strict = false) {
  ResolvedSets out;
  out.sets.name = ws.name;

  auto split = [&](const std::vector<std::string>& in, std::vector<std::string>& kept,
                   SetResolution& res, const char* label) {
    for (const auto& w : in) {
      if (e.contains(w)) {
        kept.push_back(w);
      } else {
        res.missing.push_back(w);
        out.report.warnings.push_back("dropping '" + w + "' from " + label +
                                      ": not in embedding vocabulary");
      }
    }
  };
  split(ws.X, out.sets.X, out.report.X, "X");
  split(ws.Y, out.sets.Y, out.report.Y, "Y");
  split(ws.A, out.sets.A, out.report.A, "A");
  split(ws.B, out.sets.B, out.report.B, "B");

  if (strict) {
    std::string all;
    auto gather = [&](const SetResolution& res, const char* label) {
      for (const auto& w : res.missing) {
        if (!all.empty()) all += ", ";
        all += "'" + w + "' (" + label + ")";
      }
    };
    gather(out.report.X, "X");
    gather(out.report.Y, "Y");
    gather(out.report.A, "A");
    gather(out.report.B, "B");
    if (!all.empty()) {
      throw DataError("strict mode: words missing from embedding vocabulary: " + all);
    }
  }

  auto trim_to = [&](std::vector<std::string>& set, SetResolution& res,
                     std::size_t target, const char* label) {
    while (set.size() > target) {
      std::size_t drop = 0;
      uint32_t max_id = 0;
      for (std::size_t k = 0; k < set.size(); ++k) {
        const uint32_t id = *e.id(set[k]);
        if (k == 0 || id > max_id) {
          max_id = id;
          drop = k;
        }
      }
      res.trimmed.push_back(set[drop]);
      out.report.warnings.push_back("trimming '" + set[drop] + "' from " + label +
                                    " to equalize target set sizes");
      set.erase(set.begin() + static_cast<std::ptrdiff_t>(drop));
    }
  };
  const std::size_t target = std::min(out.sets.X.size(), out.sets.Y.size());
  trim_to(out.sets.X, out.report.X, target, "X");
  trim_to(out.sets.Y, out.report.Y, target, "Y");

  auto require_nonempty = [&](const std::vector<std::string>& set, const char* label) {
    if (set.empty()) {
      throw DataError(std::string("set ") + label +
                      " has no usable words after vocabulary resolution");
    }
  };
  require_nonempty(out.sets.X, "X");
  require_nonempty(out.sets.Y, "Y");
  require_nonempty(out.sets.A, "A");
  require_nonempty(out.sets.B, "B");
  return out;
}

struct PairingSum {
  double sum = 0.0;
  double mean = 0.0;
};

// One X-vs-Y contrast on raw association to a single attribute set.
struct DecompositionRow {
  std::string attribute;  // "A" or "B"
  PairingSum x, y;
  double effect_size = 0.0;
  double p_value = 0.0;
  bool p_exact = false;
  uint64_t p_evaluations = 0;
};

struct WeatResult {
  std::string name;
  double S = 0.0;
  double effect_size = 0.0;
  double p_value = 0.0;
  bool p_exact = false;
  uint64_t p_evaluations = 0;
  uint64_t n_shuffles = 0;
  uint64_t seed = 0;
  std::map<std::string, double> per_word_s;
  PairingSum net_x, net_y;
  PairingSum x_to_a, x_to_b, y_to_a, y_to_b;
  std::vector<DecompositionRow> decomposition;
  std::string stddev_convention = "sample (n-1)";
  WordSets resolved;
  Resolution resolution;
};

inline WeatResult run_weat(const WordSets& ws, const EmbeddingSet& e,
                           uint64_t n_shuffles, uint64_t seed, bool strict = false) {
  if (n_shuffles < 1) throw UsageError("shuffle count must be >= 1");
  ResolvedSets rs = resolve_sets(ws, e, strict);
  const WordSets& sets = rs.sets;
  if (sets.X.size() + sets.Y.size() < 3) {
    throw DataError("effect size needs at least 3 pooled target words");
  }

  detail::FinalVectors fv(e);
  const std::size_t nx = sets.X.size(), ny = sets.Y.size();

  // Per-word raw associations to each attribute set; s = a - b.
  std::vector<double> a_scores, b_scores, s_scores;
  a_scores.reserve(nx + ny);
  b_scores.reserve(nx + ny);
  s_scores.reserve(nx + ny);
  auto push_word = [&](const std::string& w) {
    const double a = detail::mean_cos(fv, w, sets.A);
    const double b = detail::mean_cos(fv, w, sets.B);
    a_scores.push_back(a);
    b_scores.push_back(b);
    s_scores.push_back(a - b);
  };
  for (const auto& x : sets.X) push_word(x);
  for (const auto& y : sets.Y) push_word(y);

  WeatResult r;
  r.name = sets.name;
  r.n_shuffles = n_shuffles;
  r.seed = seed;
  r.resolved = sets;
  r.resolution = rs.report;

  auto side_sums = [&](const std::vector<double>& scores) {
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < nx; ++i) sx += scores[i];
    for (std::size_t i = nx; i < nx + ny; ++i) sy += scores[i];
    return std::pair<double, double>{sx, sy};
  };

  const auto [s_x, s_y] = side_sums(s_scores);
  r.net_x = {s_x, s_x / static_cast<double>(nx)};
  r.net_y = {s_y, s_y / static_cast<double>(ny)};
  r.S = s_x - s_y;

  const double sd = detail::sample_stddev(s_scores);
  if (sd == 0.0) throw DataError("effect size degenerate: no spread in association scores");
  r.effect_size = (r.net_x.mean - r.net_y.mean) / sd;

  const PValue pv = detail::partition_test(s_scores, nx, r.S, n_shuffles, seed);
  r.p_value = pv.p;
  r.p_exact = pv.exact;
  r.p_evaluations = pv.evaluations;

  for (std::size_t i = 0; i < nx; ++i) r.per_word_s[sets.X[i]] = s_scores[i];
  for (std::size_t i = 0; i < ny; ++i) r.per_word_s[sets.Y[i]] = s_scores[nx + i];

  const auto [a_x, a_y] = side_sums(a_scores);
  const auto [b_x, b_y] = side_sums(b_scores);
  r.x_to_a = {a_x, a_x / static_cast<double>(nx)};
  r.y_to_a = {a_y, a_y / static_cast<double>(ny)};
  r.x_to_b = {b_x, b_x / static_cast<double>(nx)};
  r.y_to_b = {b_y, b_y / static_cast<double>(ny)};

  // Each attribute contrast reuses the partition machinery on its raw scores;
  // row seeds derive from the run seed so replays match.
  auto decompose = [&](const char* label, const std::vector<double>& scores,
                       const PairingSum& px, const PairingSum& py, uint64_t row_seed) {
    DecompositionRow row;
    row.attribute = label;
    row.x = px;
    row.y = py;
    const double row_sd = detail::sample_stddev(scores);
    if (row_sd == 0.0) {
      throw DataError("effect size degenerate: no spread in association scores");
    }
    row.effect_size = (px.mean - py.mean) / row_sd;
    const PValue rp =
        detail::partition_test(scores, nx, px.sum - py.sum, n_shuffles, row_seed);
    row.p_value = rp.p;
    row.p_exact = rp.exact;
    row.p_evaluations = rp.evaluations;
    return row;
  };
  r.decomposition.push_back(decompose("A", a_scores, r.x_to_a, r.y_to_a, seed + 1));
  r.decomposition.push_back(decompose("B", b_scores, r.x_to_b, r.y_to_b, seed + 2));
  return r;
}

// Flowers-vs-insects sanity check; a sound embedding of natural English
// yields d > 0. Requires at least 2 resolvable words per set.
inline WeatResult validation_test(const EmbeddingSet& e, uint64_t n_shuffles = 5000,
                                  uint64_t seed = 42);

namespace detail {

inline nlohmann::ordered_json pairing_json(const PairingSum& p) {
  return {{"sum", p.sum}, {"mean", p.mean}};
}

inline PairingSum pairing_from_json(const nlohmann::json& j) {
  return {j.at("sum").get<double>(), j.at("mean").get<double>()};
}

}  // namespace detail

inline nlohmann::ordered_json weat_result_to_json(const WeatResult& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["S"] = r.S;
  j["effect_size"] = r.effect_size;
  j["p_value"] = r.p_value;
  j["p_mode"] = r.p_exact ? "exact" : "sampled";
  j["p_evaluations"] = r.p_evaluations;
  j["n_shuffles"] = r.n_shuffles;
  j["seed"] = r.seed;
  j["stddev_convention"] = r.stddev_convention;
  j["sizes"] = {{"X", r.resolved.X.size()},
                {"Y", r.resolved.Y.size()},
                {"A", r.resolved.A.size()},
                {"B", r.resolved.B.size()}};
  j["words"] = {{"X", r.resolved.X},
                {"Y", r.resolved.Y},
                {"A", r.resolved.A},
                {"B", r.resolved.B}};
  j["net_similarity"] = {{"X", detail::pairing_json(r.net_x)},
                         {"Y", detail::pairing_json(r.net_y)}};
  j["pairings"] = {{"X_A", detail::pairing_json(r.x_to_a)},
                   {"X_B", detail::pairing_json(r.x_to_b)},
                   {"Y_A", detail::pairing_json(r.y_to_a)},
                   {"Y_B", detail::pairing_json(r.y_to_b)}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.decomposition) {
    rows.push_back({{"attribute", row.attribute},
                    {"X", detail::pairing_json(row.x)},
                    {"Y", detail::pairing_json(row.y)},
                    {"effect_size", row.effect_size},
                    {"p_value", row.p_value},
                    {"p_mode", row.p_exact ? "exact" : "sampled"},
                    {"p_evaluations", row.p_evaluations}});
  }
  j["decomposition"] = rows;
  nlohmann::ordered_json pw;
  for (const auto& [w, s] : r.per_word_s) pw[w] = s;
  j["per_word_s"] = pw;
  j["resolution"] = {
      {"X", {{"missing", r.resolution.X.missing}, {"trimmed", r.resolution.X.trimmed}}},
      {"Y", {{"missing", r.resolution.Y.missing}, {"trimmed", r.resolution.Y.trimmed}}},
      {"A", {{"missing", r.resolution.A.missing}, {"trimmed", r.resolution.A.trimmed}}},
      {"B", {{"missing", r.resolution.B.missing}, {"trimmed", r.resolution.B.trimmed}}},
      {"warnings", r.resolution.warnings}};
  return j;
}

inline WeatResult weat_result_from_json(const nlohmann::json& j,
                                        const std::string& where = "result") {
  try {
    WeatResult r;
    r.name = j.at("name").get<std::string>();
    r.S = j.at("S").get<double>();
    r.effect_size = j.at("effect_size").get<double>();
    r.p_value = j.at("p_value").get<double>();
    r.p_exact = j.at("p_mode").get<std::string>() == "exact";
    r.p_evaluations = j.at("p_evaluations").get<uint64_t>();
    r.n_shuffles = j.at("n_shuffles").get<uint64_t>();
    r.seed = j.at("seed").get<uint64_t>();
    r.stddev_convention = j.at("stddev_convention").get<std::string>();
    const auto& words = j.at("words");
    r.resolved.name = r.name;
    r.resolved.X = words.at("X").get<std::vector<std::string>>();
    r.resolved.Y = words.at("Y").get<std::vector<std::string>>();
    r.resolved.A = words.at("A").get<std::vector<std::string>>();
    r.resolved.B = words.at("B").get<std::vector<std::string>>();
    r.net_x = detail::pairing_from_json(j.at("net_similarity").at("X"));
    r.net_y = detail::pairing_from_json(j.at("net_similarity").at("Y"));
    r.x_to_a = detail::pairing_from_json(j.at("pairings").at("X_A"));
    r.x_to_b = detail::pairing_from_json(j.at("pairings").at("X_B"));
    r.y_to_a = detail::pairing_from_json(j.at("pairings").at("Y_A"));
    r.y_to_b = detail::pairing_from_json(j.at("pairings").at("Y_B"));
    for (const auto& row_json : j.at("decomposition")) {
      DecompositionRow row;
      row.attribute = row_json.at("attribute").get<std::string>();
      row.x = detail::pairing_from_json(row_json.at("X"));
      row.y = detail::pairing_from_json(row_json.at("Y"));
      row.effect_size = row_json.at("effect_size").get<double>();
      row.p_value = row_json.at("p_value").get<double>();
      row.p_exact = row_json.at("p_mode").get<std::string>() == "exact";
      row.p_evaluations = row_json.at("p_evaluations").get<uint64_t>();
      r.decomposition.push_back(std::move(row));
    }
    for (const auto& [w, s] : j.at("per_word_s").items()) {
      r.per_word_s[w] = s.get<double>();
    }
    const auto& res = j.at("resolution");
    auto set_res = [&](const char* key) {
      SetResolution sr;
      sr.missing = res.at(key).at("missing").get<std::vector<std::string>>();
      sr.trimmed = res.at(key).at("trimmed").get<std::vector<std::string>>();
      return sr;
    };
    r.resolution.X = set_res("X");
    r.resolution.Y = set_res("Y");
    r.resolution.A = set_res("A");
    r.resolution.B = set_res("B");
    r.resolution.warnings = res.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(where + ": malformed result JSON: " + ex.what());
  }
}

}  // namespace embias

#include "embias/wordlists.hpp"

namespace embias {

inline WeatResult validation_test(const EmbeddingSet& e, uint64_t n_shuffles,
                                  uint64_t seed) {
  const WordSets ws = lists::validation_sets();
  std::string missing;
  auto check = [&](const std::vector<std::string>& set, const char* label) {
    std::size_t present = 0;
    std::string gone;
    for (const auto& w : set) {
      if (e.contains(w)) {
        ++present;
      } else {
        if (!gone.empty()) gone += ", ";
        gone += "'" + w + "'";
      }
    }
    if (present < 2) {
      if (!missing.empty()) missing += "; ";
      missing += std::string(label) + " has " + std::to_string(present) +
                 " usable words, missing: " + gone;
    }
  };
  check(ws.X, "flowers");
  check(ws.Y, "insects");
  check(ws.A, "validation_positive");
  check(ws.B, "validation_negative");
  if (!missing.empty()) {
    throw DataError("insufficient vocabulary coverage for validation: " + missing);
  }
  return run_weat(ws, e, n_shuffles, seed, /*strict=*/false);
}

}  // namespace embias
