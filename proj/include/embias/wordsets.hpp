#pragma once

// Target/attribute word bundle for one association comparison, with JSON I/O.
// File schema: {"name": str, "X": [...], "Y": [...], "A": [...], "B": [...]}.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "embias/error.hpp"

namespace embias {

struct WordSets {
  std::string name;
  std::vector<std::string> X;  // target set 1
  std::vector<std::string> Y;  // target set 2
  std::vector<std::string> A;  // attribute set 1
  std::vector<std::string> B;  // attribute set 2
};

namespace detail {

inline std::vector<std::string> string_array(const nlohmann::json& j, const char* key,
                                             const std::string& where) {
  if (!j.contains(key)) {
    throw DataError(where + ": missing key \"" + key + "\"");
  }
  const auto& arr = j.at(key);
  if (!arr.is_array()) {
    throw DataError(where + ": \"" + std::string(key) + "\" must be an array");
  }
  std::vector<std::string> out;
  out.reserve(arr.size());
  for (const auto& el : arr) {
    if (!el.is_string()) {
      throw DataError(where + ": \"" + std::string(key) + "\" must contain only strings");
    }
    out.push_back(el.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline WordSets word_sets_from_json(const nlohmann::json& j,
                                    const std::string& where = "word sets") {
  if (!j.is_object()) throw DataError(where + ": expected a JSON object");
  WordSets ws;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw DataError(where + ": \"name\" must be a string");
    ws.name = j.at("name").get<std::string>();
  }
  ws.X = detail::string_array(j, "X", where);
  ws.Y = detail::string_array(j, "Y", where);
  ws.A = detail::string_array(j, "A", where);
  ws.B = detail::string_array(j, "B", where);
  return ws;
}

inline nlohmann::ordered_json word_sets_to_json(const WordSets& ws) {
  nlohmann::ordered_json j;
  j["name"] = ws.name;
  j["X"] = ws.X;
  j["Y"] = ws.Y;
  j["A"] = ws.A;
  j["B"] = ws.B;
  return j;
}

inline WordSets load_word_sets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open word sets file: " + path);
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw DataError("word sets file is not valid JSON: " + path);
  return word_sets_from_json(j, path);
}

inline void save_word_sets(const WordSets& ws, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write word sets file: " + path);
  out << word_sets_to_json(ws).dump(2) << '\n';
  if (!out) throw DataError("failed writing word sets file: " + path);
}

}  // namespace embias
