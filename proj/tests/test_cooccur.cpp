#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "embias/cooccur.hpp"
#include "embias/vocab.hpp"
#include "support/oracles.hpp"
#include "support/temp.hpp"

using embias::CooccurrenceAccumulator;
using embias::CooccurrenceMatrix;
using embias::CorpusFormat;
using embias::Vocabulary;
using embias::Weighting;
using testsupport::TempDir;

namespace {

CooccurrenceMatrix from_id_docs(const std::vector<std::vector<uint32_t>>& docs,
                                const Vocabulary& vocab, int window, Weighting w) {
  CooccurrenceAccumulator acc(window, w);
  for (const auto& doc : docs) acc.add_document(doc);
  return std::move(acc).finalize(vocab);
}

}  // namespace

TEST_CASE("hand-counted window-1 example") {
  // corpus "a b a c": adjacent pairs ab, ba, ac
  Vocabulary vocab({"a", "b", "c"}, {2, 1, 1}, 1);
  const auto m = from_id_docs({{0, 1, 0, 2}}, vocab, 1, Weighting::Uniform);

  CHECK(m.get(0, 1) == 2.0);
  CHECK(m.get(1, 0) == 2.0);
  CHECK(m.get(0, 2) == 1.0);
  CHECK(m.get(1, 2) == 0.0);
  CHECK(m.row_sum(0) == 3.0);
  CHECK(m.row_sum(1) == 2.0);
  CHECK(m.row_sum(2) == 1.0);
  CHECK(m.total_mass() == 6.0);
  CHECK(m.entry_count() == 4);  // ab, ba, ac, ca

  CHECK(embias::cooccur_probability(m, 1, 0) == Catch::Approx(2.0 / 3.0));
  CHECK(embias::cooccur_probability(m, 2, 0) == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("inverse-distance weighting scales mass by 1/k") {
  Vocabulary vocab({"a", "b", "c"}, {1, 1, 1}, 1);
  const auto m = from_id_docs({{0, 1, 2}}, vocab, 2, Weighting::InverseDistance);
  CHECK(m.get(0, 1) == 1.0);
  CHECK(m.get(0, 2) == 0.5);
  CHECK(m.get(1, 2) == 1.0);
  CHECK(m.row_sum(0) == 1.5);
  CHECK(m.row_sum(1) == 2.0);
}

TEST_CASE("a word co-occurring with itself lands double mass on the diagonal") {
  Vocabulary vocab({"a"}, {2}, 1);
  const auto m = from_id_docs({{0, 0}}, vocab, 1, Weighting::Uniform);
  CHECK(m.get(0, 0) == 2.0);
  CHECK(m.row_sum(0) == 2.0);
  CHECK(m.entry_count() == 1);
}

TEST_CASE("windows never cross document boundaries") {
  Vocabulary vocab({"a", "b", "c", "d"}, {1, 1, 1, 1}, 1);
  const auto m = from_id_docs({{0, 1}, {2, 3}}, vocab, 10, Weighting::Uniform);
  CHECK(m.get(0, 1) == 1.0);
  CHECK(m.get(2, 3) == 1.0);
  CHECK(m.get(1, 2) == 0.0);
  CHECK(m.get(0, 3) == 0.0);
}

TEST_CASE("out-of-vocabulary tokens are removed before windowing") {
  TempDir dir;
  const auto path = dir.write("c.txt", "a z b\na b\n");
  const auto vocab = embias::build_vocab({path, CorpusFormat::PlainLines, ""}, 2);
  REQUIRE(vocab.size() == 2);  // z occurs once
  const auto m = embias::count_cooccurrences({path, CorpusFormat::PlainLines, ""},
                                             vocab, 1, Weighting::Uniform, 1);
  // "a z b" collapses to "a b", so the pair is adjacent in both documents
  CHECK(m.get(*vocab.id("a"), *vocab.id("b")) == 2.0);
}

TEST_CASE("accumulator rejects a zero window") {
  CHECK_THROWS_AS(CooccurrenceAccumulator(0, Weighting::Uniform), embias::UsageError);
}

TEST_CASE("sharded counting matches single-threaded exactly") {
  TempDir dir;
  std::string corpus;
  std::mt19937_64 rng(11);
  for (int d = 0; d < 40; ++d) {
    const int len = 1 + static_cast<int>(rng() % 30);
    for (int t = 0; t < len; ++t) {
      corpus += static_cast<char>('a' + rng() % 6);
      corpus += ' ';
    }
    corpus += '\n';
  }
  const auto path = dir.write("c.txt", corpus);
  const auto vocab = embias::build_vocab({path, CorpusFormat::PlainLines, ""}, 1);
  for (auto w : {Weighting::Uniform, Weighting::InverseDistance}) {
    const auto m1 = embias::count_cooccurrences({path, CorpusFormat::PlainLines, ""},
                                                vocab, 5, w, 1);
    const auto m4 = embias::count_cooccurrences({path, CorpusFormat::PlainLines, ""},
                                                vocab, 5, w, 4);
    CHECK(m1.entry_count() == m4.entry_count());
    // integer masses must agree exactly; inverse-distance sums may differ in
    // the last ulp because shards add documents in a different order
    const double tol = w == Weighting::Uniform ? 0.0 : 1e-12;
    bool equal = true;
    m1.for_each_entry([&](uint32_t i, uint32_t j, double x) {
      if (std::fabs(m4.get(i, j) - x) > tol) equal = false;
    });
    CHECK(equal);
  }
}

TEST_CASE("random corpora match the dense oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t v = 2 + rng() % 7;
    std::vector<std::string> words;
    std::vector<uint64_t> counts(v, 1);
    for (std::size_t i = 0; i < v; ++i) words.push_back(std::string(1, static_cast<char>('a' + i)));
    Vocabulary vocab(std::move(words), std::move(counts), 1);

    std::vector<std::vector<uint32_t>> docs(1 + rng() % 6);
    for (auto& doc : docs) {
      const std::size_t len = rng() % 60;
      for (std::size_t t = 0; t < len; ++t) doc.push_back(static_cast<uint32_t>(rng() % v));
    }
    const int window = 1 + static_cast<int>(rng() % 4);
    for (auto w : {Weighting::Uniform, Weighting::InverseDistance}) {
      const auto m = from_id_docs(docs, vocab, window, w);
      const auto dense =
          oracle::dense_cooccur(docs, v, window, w == Weighting::InverseDistance);
      for (uint32_t i = 0; i < v; ++i) {
        double row = 0.0;
        for (uint32_t j = 0; j < v; ++j) {
          row += dense[i][j];
          if (w == Weighting::Uniform) {
            REQUIRE(m.get(i, j) == dense[i][j]);
          } else {
            REQUIRE_THAT(m.get(i, j),
                         Catch::Matchers::WithinAbs(dense[i][j], 1e-12));
          }
        }
        REQUIRE_THAT(m.row_sum(i), Catch::Matchers::WithinAbs(row, 1e-12));
      }
    }
  }
}

TEST_CASE("matrix file round-trips bit for bit") {
  TempDir dir;
  Vocabulary vocab({"a", "b", "c"}, {3, 2, 1}, 1);
  const auto m =
      from_id_docs({{0, 1, 0, 2, 0, 0}}, vocab, 3, Weighting::InverseDistance);
  const auto path = dir.file("m.bin");
  m.save(path);

  const auto content = testsupport::slurp(path);
  REQUIRE(content.size() >= 5);
  CHECK(content.compare(0, 5, "COOC1") == 0);

  const auto loaded = CooccurrenceMatrix::load(path);
  CHECK(loaded.vocab_size() == 3);
  CHECK(loaded.window() == 3);
  CHECK(loaded.weighting() == Weighting::InverseDistance);
  CHECK(loaded.vocab_checksum() == vocab.checksum());
  CHECK(loaded.entry_count() == m.entry_count());
  m.for_each_entry(
      [&](uint32_t i, uint32_t j, double x) { REQUIRE(loaded.get(i, j) == x); });
}

namespace {

void put_le(std::string& out, uint64_t v, int bytes) {
  for (int k = 0; k < bytes; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFF));
}

std::string matrix_header(uint32_t v, uint16_t window, uint8_t weighting,
                          uint64_t checksum) {
  std::string out = "COOC1";
  put_le(out, v, 4);
  put_le(out, window, 2);
  put_le(out, weighting, 1);
  put_le(out, checksum, 8);
  return out;
}

void put_record(std::string& out, uint32_t i, uint32_t j, double x) {
  put_le(out, i, 4);
  put_le(out, j, 4);
  uint64_t bits;
  std::memcpy(&bits, &x, 8);
  put_le(out, bits, 8);
}

}  // namespace

TEST_CASE("matrix load rejects corrupted files") {
  TempDir dir;
  CHECK_THROWS_AS(CooccurrenceMatrix::load(dir.file("absent.bin")), embias::DataError);

  const auto badMagic = dir.write("magic.bin", "NOPE!rest");
  CHECK_THROWS_WITH(CooccurrenceMatrix::load(badMagic),
                    Catch::Matchers::ContainsSubstring("bad magic"));

  const auto shortHeader = dir.write("short.bin", "COOC1\x02");
  CHECK_THROWS_WITH(CooccurrenceMatrix::load(shortHeader),
                    Catch::Matchers::ContainsSubstring("truncated matrix header"));

  std::string trunc = matrix_header(3, 2, 0, 7);
  put_record(trunc, 0, 1, 1.0);
  trunc.resize(trunc.size() - 3);  // cut into the last record
  CHECK_THROWS_WITH(CooccurrenceMatrix::load(dir.write("trunc.bin", trunc)),
                    Catch::Matchers::ContainsSubstring("truncated matrix record"));

  std::string badW = matrix_header(3, 2, 9, 7);
  CHECK_THROWS_WITH(CooccurrenceMatrix::load(dir.write("weight.bin", badW)),
                    Catch::Matchers::ContainsSubstring("unknown weighting"));

  std::string range = matrix_header(2, 2, 0, 7);
  put_record(range, 0, 5, 1.0);
  CHECK_THROWS_WITH(CooccurrenceMatrix::load(dir.write("range.bin", range)),
                    Catch::Matchers::ContainsSubstring("out of vocabulary range"));

  std::string asym = matrix_header(2, 2, 0, 7);
  put_record(asym, 0, 1, 1.0);
  put_record(asym, 1, 0, 2.0);
  CHECK_THROWS_WITH(CooccurrenceMatrix::load(dir.write("asym.bin", asym)),
                    Catch::Matchers::ContainsSubstring("asymmetric record pair"));

  std::string nonpos = matrix_header(2, 2, 0, 7);
  put_record(nonpos, 0, 1, 0.0);
  CHECK_THROWS_WITH(CooccurrenceMatrix::load(dir.write("nonpos.bin", nonpos)),
                    Catch::Matchers::ContainsSubstring("non-positive mass"));
}

TEST_CASE("probability helpers flag unobserved words") {
  Vocabulary vocab({"a", "b", "c"}, {2, 2, 1}, 1);
  // c appears alone in its document, so it has no context at all
  const auto m = from_id_docs({{0, 1}, {2}}, vocab, 1, Weighting::Uniform);
  CHECK(embias::cooccur_probability(m, 1, 0) == 1.0);
  CHECK_THROWS_WITH(embias::cooccur_probability(m, 0, 2),
                    Catch::Matchers::ContainsSubstring("never observed"));
  CHECK_THROWS_WITH(embias::probability_ratio(m, 1, 0, 0),
                    Catch::Matchers::ContainsSubstring("probability ratio undefined"));
}

TEST_CASE("probability ratio compares two context rows") {
  // "a b c b a": window 1, uniform
  Vocabulary vocab({"a", "b", "c"}, {2, 2, 1}, 1);
  const auto m = from_id_docs({{0, 1, 2, 1, 0}}, vocab, 1, Weighting::Uniform);
  // X: ab=2, bc=2; X_a=2, X_b=4, X_c=2
  // P(b|a) = 1, P(b|c) = 1 -> ratio 1
  CHECK(embias::probability_ratio(m, 0, 2, 1) == Catch::Approx(1.0));
  // P(a|b) = 0.5, P(a|a) = 0 -> numerator fine, denominator zero
  CHECK_THROWS_AS(embias::probability_ratio(m, 1, 0, 0), embias::DataError);
}

TEST_CASE("merge is order-insensitive entrywise addition") {
  Vocabulary vocab({"a", "b"}, {2, 2}, 1);
  CooccurrenceAccumulator one(1, Weighting::Uniform);
  one.add_document({0, 1});
  one.add_document({1, 0});
  CooccurrenceAccumulator left(1, Weighting::Uniform);
  left.add_document({0, 1});
  CooccurrenceAccumulator right(1, Weighting::Uniform);
  right.add_document({1, 0});
  left.merge(std::move(right));
  const auto a = std::move(one).finalize(vocab);
  const auto b = std::move(left).finalize(vocab);
  CHECK(a.get(0, 1) == b.get(0, 1));
  CHECK(a.get(0, 1) == 2.0);
}
