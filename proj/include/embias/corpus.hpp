#pragma once

// Corpus ingestion: streaming document readers for plain-line, JSONL and CSV
// review dumps, and the tokenizer that normalizes raw text into word tokens
// (lowercased, punctuation and digits act as separators, apostrophes dropped).

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "embias/error.hpp"

namespace embias {

struct Document {
  std::string id;                   // 1-based record ordinal within the source
  std::vector<std::string> tokens;  // normalized, in source order
};

enum class CorpusFormat { PlainLines, Jsonl, Csv };

struct CorpusSource {
  std::string path;
  CorpusFormat format = CorpusFormat::PlainLines;
  std::string field;  // JSONL field name / CSV column name holding the text
};

namespace detail {

// Decodes the next UTF-8 codepoint, advancing i. Invalid bytes decode to
// U+FFFD and consume one byte, so garbage degrades into token separators.
inline uint32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  uint32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    unsigned char bk = byte(i + k);
    if ((bk & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (bk & 0x3F);
  }
  i += len;
  return cp;
}

inline void append_utf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Straight or typographic apostrophes join the letter runs around them.
inline bool is_apostrophe(uint32_t cp) { return cp == 0x27 || cp == 0x2019; }

// Letter classification. Exact for ASCII, Latin-1 Supplement and Latin
// Extended-A; other scripts are kept as opaque letters except the general
// and CJK punctuation blocks, which separate tokens.
inline bool is_letter(uint32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
  if (cp < 0xC0) return false;                       // Latin-1 punctuation/symbols
  if (cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;   // multiplication/division signs
  if (cp <= 0x17F) return true;                      // Latin Extended-A
  if (cp == 0xFFFD) return false;
  if (cp >= 0x2000 && cp <= 0x206F) return false;    // general punctuation
  if (cp >= 0x3000 && cp <= 0x303F) return false;    // CJK punctuation
  return true;
}

// Case folding over the same ranges; codepoints without a mapping here pass
// through unchanged.
inline uint32_t to_lower(uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp == 0x130) return 'i';  // dotted capital I; naive pairing would give dotless
  if (cp >= 0x100 && cp <= 0x137 && (cp & 1) == 0) return cp + 1;
  if (cp >= 0x139 && cp <= 0x147 && (cp & 1) == 1) return cp + 1;
  if (cp >= 0x14A && cp <= 0x176 && (cp & 1) == 0) return cp + 1;
  if (cp == 0x178) return 0xFF;
  if ((cp == 0x179 || cp == 0x17B || cp == 0x17D)) return cp + 1;
  return cp;
}

}  // namespace detail

// Splits raw text into lowercase word tokens. Every maximal run of letters
// forms one token; digits and punctuation separate tokens and are discarded;
// apostrophes are dropped without splitting ("don't" -> "dont").
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  std::size_t i = 0;
  while (i < text.size()) {
    uint32_t cp = detail::decode_utf8(text, i);
    if (detail::is_apostrophe(cp)) continue;
    if (detail::is_letter(cp)) {
      detail::append_utf8(cur, detail::to_lower(cp));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

struct RecordIssue {
  uint64_t line = 0;
  std::string message;
};

// Streams documents from a corpus file without materializing it. Malformed
// JSONL/CSV records are skipped and counted rather than aborting the run;
// the first few issues are retained with their line numbers for diagnostics.
class DocumentReader {
public:
  static constexpr std::size_t kMaxRetainedIssues = 20;

  explicit DocumentReader(CorpusSource source) : source_(std::move(source)) {
    in_.open(source_.path, std::ios::binary);
    if (!in_.is_open()) {
      throw DataError("cannot open corpus file: " + source_.path);
    }
    if (source_.format == CorpusFormat::Csv) {
      if (source_.field.empty()) {
        throw UsageError("csv format requires a text column name");
      }
      std::vector<std::string> header;
      if (!read_csv_record(header)) {
        throw DataError("csv file has no header row: " + source_.path);
      }
      for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == source_.field) {
          csv_column_ = c;
          break;
        }
      }
      if (csv_column_ == kNoColumn) {
        throw DataError("csv header of " + source_.path + " has no column named '" +
                        source_.field + "'");
      }
    } else if (source_.format == CorpusFormat::Jsonl && source_.field.empty()) {
      throw UsageError("jsonl format requires a text field name");
    }
  }

  // Next document in file order, or nullopt at end of input.
  std::optional<Document> next() {
    switch (source_.format) {
      case CorpusFormat::PlainLines: return next_plain();
      case CorpusFormat::Jsonl: return next_jsonl();
      case CorpusFormat::Csv: return next_csv();
    }
    return std::nullopt;
  }

  uint64_t documents_read() const { return documents_; }
  uint64_t malformed_records() const { return malformed_; }
  const std::vector<RecordIssue>& issues() const { return issues_; }

private:
  static constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);

  std::optional<Document> next_plain() {
    std::string line;
    if (!get_line(line)) return std::nullopt;
    return make_document(line);
  }

  std::optional<Document> next_jsonl() {
    std::string line;
    while (get_line(line)) {
      uint64_t record_line = line_;
      auto parsed = nlohmann::json::parse(line, nullptr, false);
      if (parsed.is_discarded()) {
        record_issue(record_line, "invalid JSON");
        continue;
      }
      auto it = parsed.find(source_.field);
      if (it == parsed.end()) {
        record_issue(record_line, "missing field '" + source_.field + "'");
        continue;
      }
      if (!it->is_string()) {
        record_issue(record_line, "field '" + source_.field + "' is not a string");
        continue;
      }
      return make_document(it->get<std::string>());
    }
    return std::nullopt;
  }

  std::optional<Document> next_csv() {
    std::vector<std::string> fields;
    while (true) {
      uint64_t record_line = line_ + 1;
      if (!read_csv_record(fields)) return std::nullopt;
      if (fields.size() <= csv_column_) {
        record_issue(record_line, "record has " + std::to_string(fields.size()) +
                                      " fields, text column is #" +
                                      std::to_string(csv_column_ + 1));
        continue;
      }
      return make_document(fields[csv_column_]);
    }
  }

  Document make_document(std::string_view text) {
    ++documents_;
    return Document{std::to_string(documents_), tokenize(text)};
  }

  // Reads one line, tolerating CRLF and a missing trailing newline.
  bool get_line(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  // RFC 4180 record reader: quoted fields may contain commas, doubled quotes
  // and newlines, so records can span physical lines.
  bool read_csv_record(std::vector<std::string>& fields) {
    fields.clear();
    int ch = in_.get();
    if (ch == EOF) return false;
    std::string field;
    bool in_quotes = false;
    uint64_t start_line = line_ + 1;
    while (true) {
      if (ch == EOF) {
        if (in_quotes) record_issue(start_line, "unterminated quoted field at end of file");
        if (!field.empty() && field.back() == '\r') field.pop_back();
        fields.push_back(std::move(field));
        ++line_;
        return !in_quotes;
      }
      char c = static_cast<char>(ch);
      if (in_quotes) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            in_quotes = false;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(c);
        }
      } else if (c == '"' && field.empty()) {
        in_quotes = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\n') {
        ++line_;
        if (!field.empty() && field.back() == '\r') field.pop_back();
        fields.push_back(std::move(field));
        return true;
      } else {
        field.push_back(c);
      }
      ch = in_.get();
    }
  }

  void record_issue(uint64_t line, const std::string& message) {
    ++malformed_;
    if (issues_.size() < kMaxRetainedIssues) issues_.push_back({line, message});
  }

  CorpusSource source_;
  std::ifstream in_;
  uint64_t line_ = 0;
  uint64_t documents_ = 0;
  uint64_t malformed_ = 0;
  std::size_t csv_column_ = kNoColumn;
  std::vector<RecordIssue> issues_;
};

}  // namespace embias
