#pragma once

// Built-in target and attribute word lists, shipped as immutable data. The
// printed sources repeat "creative" (positive) and "conformist" (negative);
// those repeats are dropped here and recorded in duplicates_removed() with
// the original printed cardinalities kept in printed_count().

#include <string>
#include <vector>

#include <json.hpp>

#include "embias/error.hpp"
#include "embias/wordsets.hpp"

namespace embias::lists {

namespace detail {

struct BuiltinList {
  const char* id;
  std::size_t printed_count;  // cardinality as printed, duplicates included
  std::vector<std::string> words;
  std::vector<std::string> removed;  // words printed more than once
};

inline const std::vector<BuiltinList>& all() {
  static const std::vector<BuiltinList> lists = {
      {"female_names",
       8,
       {"joan", "lisa", "sarah", "diana", "kate", "ann", "amy", "donna"},
       {}},
      {"male_names",
       8,
       {"john", "paul", "mike", "kevin", "steve", "greg", "jeff", "bill"},
       {}},
      {"career_words",
       8,
       {"executive", "management", "professional", "corporation", "salary", "office",
        "business", "career"},
       {}},
      {"family_words",
       8,
       {"home", "parents", "children", "family", "cousins", "marriage", "wedding",
        "relatives"},
       {}},
      {"female_words",
       10,
       {"she", "hers", "her", "woman", "female", "herself", "women", "females", "gal",
        "girl"},
       {}},
      {"male_words",
       10,
       {"he", "his", "him", "man", "male", "himself", "men", "males", "guy", "boy"},
       {}},
      {"positive_attributes",
       30,
       {"honest",      "reasonable", "independent", "thorough",   "dependable",
        "rational",    "relaxed",    "loyal",       "reliable",   "disciplined",
        "patience",    "creative",   "innovative",  "planned",    "resolute",
        "resisted",    "industrious", "determined", "wise",       "tough",
        "jolly",       "civilized",  "strong",      "enterprising", "quick",
        "logical",     "original",   "methodical",  "kind"},
       {"creative"}},
      {"negative_attributes",
       29,
       {"unfriendly",  "unkind",     "rigid",       "moody",      "intolerant",
        "hedonistic",  "tempted",    "fragile",     "indulgent",  "irresponsible",
        "instinctive", "dissatisfied", "conformist", "impulsive", "fickle",
        "unreliable",  "emotional",  "vain",        "lazy",       "submissive",
        "irritable",   "frivolous",  "inhibited",   "sensitive",  "vindictive",
        "complicated", "changeable", "sarcastic"},
       {"conformist"}},
      {"flowers",
       21,
       {"aster",    "clover", "hyacinth", "marigold",  "poppy",    "iris",
        "orchid",   "rose",   "daffodil", "lilac",     "pansy",    "tulip",
        "buttercup", "daisy", "lily",     "peony",     "violet",   "carnation",
        "magnolia", "petunia", "bluebell"},
       {}},
      {"insects",
       19,
       {"caterpillar", "flea",      "locust", "bedbug",  "centipede", "fly",
        "maggot",      "tarantula", "bee",    "cockroach", "gnat",    "mosquito",
        "termite",     "beetle",    "cricket", "hornet",  "moth",     "dragonfly",
        "roach"},
       {}},
      {"validation_positive",
       23,
       {"caress",  "freedom", "love",   "peace",   "cheer",   "friend",
        "heaven",  "loyal",   "pleasure", "diamond", "gentle", "honest",
        "lucky",   "rainbow", "diploma", "gift",    "honor",   "miracle",
        "sunrise", "happy",   "laughter", "paradise", "vacation"},
       {}},
      {"validation_negative",
       25,
       {"abuse",   "crash",    "filth",  "murder",  "sickness", "accident",
        "death",   "grief",    "poison", "stink",   "assault",  "disaster",
        "hatred",  "pollute",  "tragedy", "bomb",   "divorce",  "jail",
        "poverty", "ugly",     "cancer", "evil",    "kill",     "rotten",
        "vomit"},
       {}},
  };
  return lists;
}

inline const BuiltinList& find(const std::string& id) {
  for (const auto& l : all()) {
    if (id == l.id) return l;
  }
  std::string valid;
  for (const auto& l : all()) {
    if (!valid.empty()) valid += ", ";
    valid += l.id;
  }
  throw UsageError("unknown word list '" + id + "'; valid ids: " + valid);
}

}  // namespace detail

inline std::vector<std::string> builtin_ids() {
  std::vector<std::string> ids;
  for (const auto& l : detail::all()) ids.emplace_back(l.id);
  return ids;
}

inline const std::vector<std::string>& builtin(const std::string& id) {
  return detail::find(id).words;
}

// Cardinality of the list as printed in the source, duplicates included.
inline std::size_t printed_count(const std::string& id) {
  return detail::find(id).printed_count;
}

// Words the printed source repeats; stored lists keep one copy each.
inline const std::vector<std::string>& duplicates_removed(const std::string& id) {
  return detail::find(id).removed;
}

// The four canonical gender-bias comparisons, in reporting order. X is the
// male set throughout, so positive S reads "male targets lean toward A".
inline std::vector<WordSets> standard_audits() {
  return {
      {"names_career_family", builtin("male_names"), builtin("female_names"),
       builtin("career_words"), builtin("family_words")},
      {"names_positive_negative", builtin("male_names"), builtin("female_names"),
       builtin("positive_attributes"), builtin("negative_attributes")},
      {"words_career_family", builtin("male_words"), builtin("female_words"),
       builtin("career_words"), builtin("family_words")},
      {"words_positive_negative", builtin("male_words"), builtin("female_words"),
       builtin("positive_attributes"), builtin("negative_attributes")},
  };
}

// Sanity check on embedding quality: flowers should lean toward the pleasant
// attributes, insects toward the unpleasant ones.
inline WordSets validation_sets() {
  return {"validation_flowers_insects", builtin("flowers"), builtin("insects"),
          builtin("validation_positive"), builtin("validation_negative")};
}

inline nlohmann::ordered_json export_builtins() {
  nlohmann::ordered_json j;
  for (const auto& l : detail::all()) j[l.id] = l.words;
  nlohmann::ordered_json audits = nlohmann::ordered_json::array();
  for (const auto& ws : standard_audits()) audits.push_back(word_sets_to_json(ws));
  j["standard_audits"] = audits;
  j["validation"] = word_sets_to_json(validation_sets());
  return j;
}

}  // namespace embias::lists
