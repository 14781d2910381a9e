#include <catch2/catch_amalgamated.hpp>

#include "embias/corpus.hpp"
#include "embias/vocab.hpp"
#include "support/temp.hpp"

using embias::CorpusFormat;
using embias::CorpusSource;
using embias::DocumentReader;
using embias::tokenize;
using testsupport::TempDir;

TEST_CASE("tokenize lowercases and splits on punctuation and digits") {
  CHECK(tokenize("Hello, World!") == std::vector<std::string>{"hello", "world"});
  CHECK(tokenize("abc123def") == std::vector<std::string>{"abc", "def"});
  CHECK(tokenize("one-two_three") == std::vector<std::string>{"one", "two", "three"});
  CHECK(tokenize("  spaced   out  ") == std::vector<std::string>{"spaced", "out"});
  CHECK(tokenize("42 7") == std::vector<std::string>{});
  CHECK(tokenize("") == std::vector<std::string>{});
}

TEST_CASE("tokenize drops apostrophes without splitting") {
  CHECK(tokenize("don't") == std::vector<std::string>{"dont"});
  CHECK(tokenize("it’s") == std::vector<std::string>{"its"});
  CHECK(tokenize("'quoted'") == std::vector<std::string>{"quoted"});
}

TEST_CASE("tokenize handles accented latin and wide punctuation") {
  CHECK(tokenize("Café MÜNCHEN") ==
        std::vector<std::string>{"café", "münchen"});
  CHECK(tokenize("Łódź") == std::vector<std::string>{"łódź"});
  // em dash sits in the general punctuation block and separates tokens
  CHECK(tokenize("a—b") == std::vector<std::string>{"a", "b"});
  CHECK(tokenize("3×4") == std::vector<std::string>{});
}

TEST_CASE("tokenize survives invalid utf-8 bytes") {
  std::string bad = "ok";
  bad.push_back(static_cast<char>(0xFF));
  bad += "go";
  CHECK(tokenize(bad) == std::vector<std::string>{"ok", "go"});
}

TEST_CASE("plain reader yields one document per line with ordinal ids") {
  TempDir dir;
  const auto path = dir.write("c.txt", "First line.\nsecond LINE\r\nthird\n");
  DocumentReader reader({path, CorpusFormat::PlainLines, ""});
  auto d1 = reader.next();
  auto d2 = reader.next();
  auto d3 = reader.next();
  REQUIRE(d1);
  REQUIRE(d2);
  REQUIRE(d3);
  CHECK(d1->id == "1");
  CHECK(d1->tokens == std::vector<std::string>{"first", "line"});
  CHECK(d2->tokens == std::vector<std::string>{"second", "line"});
  CHECK(d3->tokens == std::vector<std::string>{"third"});
  CHECK_FALSE(reader.next());
  CHECK(reader.documents_read() == 3);
  CHECK(reader.malformed_records() == 0);
}

TEST_CASE("jsonl reader extracts the named field and skips bad records") {
  TempDir dir;
  const auto path = dir.write("c.jsonl",
                              "{\"text\": \"good one\", \"stars\": 5}\n"
                              "not json at all\n"
                              "{\"other\": \"field\"}\n"
                              "{\"text\": 7}\n"
                              "{\"text\": \"last\"}\n");
  DocumentReader reader({path, CorpusFormat::Jsonl, "text"});
  auto d1 = reader.next();
  auto d2 = reader.next();
  REQUIRE(d1);
  REQUIRE(d2);
  CHECK(d1->tokens == std::vector<std::string>{"good", "one"});
  CHECK(d2->tokens == std::vector<std::string>{"last"});
  CHECK_FALSE(reader.next());
  CHECK(reader.documents_read() == 2);
  CHECK(reader.malformed_records() == 3);
  REQUIRE(reader.issues().size() == 3);
  CHECK(reader.issues()[0].line == 2);
  CHECK(reader.issues()[0].message == "invalid JSON");
  CHECK(reader.issues()[1].line == 3);
  CHECK(reader.issues()[1].message == "missing field 'text'");
  CHECK(reader.issues()[2].line == 4);
}

TEST_CASE("jsonl reader requires a field name") {
  TempDir dir;
  const auto path = dir.write("c.jsonl", "{}\n");
  CHECK_THROWS_AS(DocumentReader({path, CorpusFormat::Jsonl, ""}), embias::UsageError);
}

TEST_CASE("csv reader handles quoting, embedded newlines and short records") {
  TempDir dir;
  const auto path = dir.write("c.csv",
                              "id,review,stars\n"
                              "1,\"Stayed two nights, loved it\",5\n"
                              "2,\"He said \"\"wow\"\"\nacross lines\",4\n"
                              "3\n"
                              "4,plain text,3\n");
  DocumentReader reader({path, CorpusFormat::Csv, "review"});
  auto d1 = reader.next();
  auto d2 = reader.next();
  auto d3 = reader.next();
  REQUIRE(d1);
  REQUIRE(d2);
  REQUIRE(d3);
  CHECK(d1->tokens ==
        std::vector<std::string>{"stayed", "two", "nights", "loved", "it"});
  CHECK(d2->tokens ==
        std::vector<std::string>{"he", "said", "wow", "across", "lines"});
  CHECK(d3->tokens == std::vector<std::string>{"plain", "text"});
  CHECK_FALSE(reader.next());
  CHECK(reader.documents_read() == 3);
  // the single-field record never reaches the text column
  CHECK(reader.malformed_records() == 1);
  REQUIRE(reader.issues().size() == 1);
  CHECK(reader.issues()[0].line == 5);
}

TEST_CASE("csv reader flags an unterminated quote at end of file") {
  TempDir dir;
  const auto path = dir.write("c.csv", "id,review\n1,\"never closed");
  DocumentReader reader({path, CorpusFormat::Csv, "review"});
  CHECK_FALSE(reader.next());
  CHECK(reader.malformed_records() == 1);
  REQUIRE(reader.issues().size() == 1);
  CHECK(reader.issues()[0].message == "unterminated quoted field at end of file");
}

TEST_CASE("csv reader errors") {
  TempDir dir;
  const auto empty = dir.write("e.csv", "");
  const auto noCol = dir.write("n.csv", "id,body\n1,hello\n");
  CHECK_THROWS_AS(DocumentReader({noCol, CorpusFormat::Csv, ""}), embias::UsageError);
  CHECK_THROWS_AS(DocumentReader({empty, CorpusFormat::Csv, "review"}),
                  embias::DataError);
  CHECK_THROWS_AS(DocumentReader({noCol, CorpusFormat::Csv, "review"}),
                  embias::DataError);
  CHECK_THROWS_AS(DocumentReader({dir.file("absent.csv"), CorpusFormat::Csv, "review"}),
                  embias::DataError);
}

TEST_CASE("build_vocab orders by count desc then word asc and applies min_count") {
  TempDir dir;
  const auto path = dir.write("c.txt", "b a b c a b\nc d a\n");
  // counts: a=3 b=3 c=2 d=1
  const auto vocab = embias::build_vocab({path, CorpusFormat::PlainLines, ""}, 2);
  REQUIRE(vocab.size() == 3);
  CHECK(vocab.words() == std::vector<std::string>{"a", "b", "c"});
  CHECK(vocab.count(0) == 3);
  CHECK(vocab.count(2) == 2);
  CHECK(vocab.id("a") == 0u);
  CHECK(vocab.id("d") == std::nullopt);
  CHECK_FALSE(vocab.contains("d"));
}

TEST_CASE("build_vocab rejects an unreachable min_count") {
  TempDir dir;
  const auto path = dir.write("c.txt", "one two three\n");
  CHECK_THROWS_AS(embias::build_vocab({path, CorpusFormat::PlainLines, ""}, 5),
                  embias::DataError);
  CHECK_THROWS_AS(embias::build_vocab({path, CorpusFormat::PlainLines, ""}, 0),
                  embias::UsageError);
}

TEST_CASE("vocabulary file round-trips words, counts and checksum") {
  TempDir dir;
  const auto corpus = dir.write("c.txt", "pear pear apple apple apple plum\n");
  const auto vocab = embias::build_vocab({corpus, CorpusFormat::PlainLines, ""}, 1);
  const auto path = dir.file("v.tsv");
  vocab.save(path);

  const auto content = testsupport::slurp(path);
  CHECK(content == "apple\t3\npear\t2\nplum\t1\n");

  const auto loaded = embias::Vocabulary::load(path);
  CHECK(loaded.words() == vocab.words());
  CHECK(loaded.checksum() == vocab.checksum());
  CHECK(loaded.count(0) == 3);
  CHECK(loaded.min_count() == 1);
}

TEST_CASE("vocabulary load rejects malformed files") {
  TempDir dir;
  CHECK_THROWS_AS(embias::Vocabulary::load(dir.file("absent.tsv")), embias::DataError);
  const auto noTab = dir.write("a.tsv", "word 3\n");
  CHECK_THROWS_AS(embias::Vocabulary::load(noTab), embias::DataError);
  const auto badCount = dir.write("b.tsv", "word\tlots\n");
  CHECK_THROWS_AS(embias::Vocabulary::load(badCount), embias::DataError);
  const auto empty = dir.write("c.tsv", "");
  CHECK_THROWS_AS(embias::Vocabulary::load(empty), embias::DataError);
}

TEST_CASE("vocabulary checksum is order and count sensitive") {
  embias::Vocabulary a({"x", "y"}, {5, 3}, 1);
  embias::Vocabulary b({"y", "x"}, {5, 3}, 1);
  embias::Vocabulary c({"x", "y"}, {5, 4}, 1);
  CHECK(a.checksum() != b.checksum());
  CHECK(a.checksum() != c.checksum());
  CHECK(a.checksum() == embias::Vocabulary({"x", "y"}, {5, 3}, 1).checksum());
}
