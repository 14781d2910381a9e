// Deterministic synthetic review corpus, one review per line. Reviews are
// themed so the built-in lists land in distinct contexts: flowers with
// pleasant words, insects with unpleasant ones, and gendered mentions skewed
// toward career/positive vs family/negative contexts. Every built-in word is
// cycled round-robin, so all of them clear any reasonable min-count cut.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "embias/wordlists.hpp"

namespace {

// Round-robin over a list; uniform per-word counts guarantee coverage.
class Picker {
 public:
  explicit Picker(const std::vector<std::string>& words) : words_(&words) {}
  const std::string& next() { return (*words_)[i_++ % words_->size()]; }

 private:
  const std::vector<std::string>* words_;
  std::size_t i_ = 0;
};

// Connective and content filler, checked against the built-in lists so the
// planted contexts stay clean.
const std::vector<std::string>& filler() {
  static const std::vector<std::string> words = {
      "the",      "a",        "an",      "of",       "to",      "and",
      "in",       "it",       "was",     "this",     "that",    "with",
      "for",      "on",       "but",     "not",      "at",      "by",
      "from",     "as",       "or",      "so",       "if",      "about",
      "after",    "before",   "again",   "there",    "here",    "out",
      "over",     "around",   "near",    "still",    "also",    "just",
      "very",     "really",   "quite",   "rather",   "almost",  "enough",
      "then",     "because",  "since",   "during",   "review",  "store",
      "shop",     "book",     "page",    "cover",    "movie",   "film",
      "plot",     "acting",   "story",   "watch",    "time",    "scene",
      "music",    "sound",    "screen",  "quality",  "price",   "value",
      "product",  "item",     "box",     "package",  "service", "meal",
      "place",    "spot",     "staff",   "order",    "table",   "menu",
      "dish",     "plate",    "taste",   "flavor",   "drink",   "coffee",
      "bread",    "cheese",   "salad",   "soup",     "night",   "evening",
      "day",      "morning",  "week",    "month",    "year",    "hour",
      "minute",   "moment",   "visit",   "trip",     "idea",    "thing",
      "stuff",    "people",   "person",  "crowd",    "room",    "door",
      "wall",     "floor",    "street",  "road",     "corner",  "town",
      "city",     "area",     "garden",  "yard",     "park",    "tree",
      "grass",    "field",    "sky",     "rain",     "wind",    "started",
      "ended",    "finished", "came",    "went",     "got",     "made",
      "took",     "gave",     "found",   "thought",  "said",    "told",
      "asked",    "looked",   "seemed",  "turned",   "walked",  "stayed",
      "waited",   "enjoyed",  "watched", "ordered",  "tried",   "tasted",
      "returned", "bought",   "paid",    "arrived",  "opened",  "closed",
      "small",    "big",      "large",   "little",   "new",     "old",
      "early",    "late",     "warm",    "cold",     "hot",     "fresh",
      "clean",    "bright",   "dark",    "loud",     "quiet",   "busy",
      "empty",    "full",     "decent",  "solid",    "average", "typical",
      "usual",    "common",   "rare",    "simple",   "fancy",   "modern",
      "classic",  "local",    "nearby",  "famous",   "popular", "friendly",
  };
  return words;
}

enum class Theme { Flower, Insect, Male, Female, Neutral };

class Generator {
 public:
  Generator(uint64_t seed)
      : rng_(seed),
        flowers_(embias::lists::builtin("flowers")),
        insects_(embias::lists::builtin("insects")),
        pleasant_(embias::lists::builtin("validation_positive")),
        unpleasant_(embias::lists::builtin("validation_negative")),
        male_names_(embias::lists::builtin("male_names")),
        female_names_(embias::lists::builtin("female_names")),
        male_words_(embias::lists::builtin("male_words")),
        female_words_(embias::lists::builtin("female_words")),
        career_(embias::lists::builtin("career_words")),
        family_(embias::lists::builtin("family_words")),
        positive_(embias::lists::builtin("positive_attributes")),
        negative_(embias::lists::builtin("negative_attributes")),
        filler_(filler()) {}

  // Appends one review line to out, returns the number of word tokens.
  std::size_t review(std::string& out) {
    const Theme theme = pick_theme();
    const int sentences = 3 + roll(5);
    std::size_t tokens = 0;
    for (int s = 0; s < sentences; ++s) {
      std::vector<std::string> words;
      const bool themed = theme != Theme::Neutral && (s == 0 || chance(0.6));
      if (themed) {
        theme_sentence(theme, words);
      } else {
        neutral_sentence(words);
      }
      tokens += words.size();
      render(words, s == 0, out);
    }
    return tokens;
  }

 private:
  Theme pick_theme() {
    const double r = unit_(rng_);
    if (r < 0.08) return Theme::Flower;
    if (r < 0.16) return Theme::Insect;
    if (r < 0.30) return Theme::Male;
    if (r < 0.44) return Theme::Female;
    return Theme::Neutral;
  }

  int roll(int n) { return static_cast<int>(rng_() % static_cast<uint64_t>(n)); }
  bool chance(double p) { return unit_(rng_) < p; }
  const std::string& any_filler() { return filler_[rng_() % filler_.size()]; }

  void neutral_sentence(std::vector<std::string>& words) {
    const int len = 6 + roll(9);
    for (int i = 0; i < len; ++i) words.push_back(any_filler());
    if (chance(0.15)) {
      static const char* digits[] = {"2", "3", "5", "10", "20", "45", "100", "2019"};
      words.insert(words.begin() + 1 + roll(len - 1), digits[roll(8)]);
    }
  }

  // Target word in a pleasant or unpleasant attribute context.
  void nature_sentence(Picker& target, Picker& attr, std::vector<std::string>& words) {
    switch (roll(3)) {
      case 0:
        words = {"the", target.next(), "was", attr.next(), "and", attr.next()};
        break;
      case 1:
        words = {"that",         target.next(), "near", "the",
                 any_filler(),   "seemed",      attr.next()};
        break;
      default:
        words = {"the",  target.next(), "and", "the", target.next(),
                 "were", attr.next()};
        break;
    }
  }

  // Gendered subject in a career/family context with an attribute tail.
  void person_sentence(Picker& subject, Picker& context, Picker& attr,
                       std::vector<std::string>& words) {
    switch (roll(3)) {
      case 0:
        words = {subject.next(), "described",  "the", context.next(),
                 "and",          "sounded",    attr.next()};
        break;
      case 1:
        words = {subject.next(), "was", attr.next(), "about", "the", context.next()};
        break;
      default:
        words = {"the",  context.next(), "made", subject.next(),
                 "look", attr.next()};
        break;
    }
  }

  void theme_sentence(Theme theme, std::vector<std::string>& words) {
    switch (theme) {
      case Theme::Flower:
        // A crossed minority keeps every target-attribute pairing observed,
        // so the contrast lives in the mass ratio rather than in zero cells.
        nature_sentence(flowers_, chance(0.1) ? unpleasant_ : pleasant_, words);
        break;
      case Theme::Insect:
        nature_sentence(insects_, chance(0.1) ? pleasant_ : unpleasant_, words);
        break;
      case Theme::Male: {
        Picker& subject = chance(0.5) ? male_names_ : male_words_;
        // A minority of crossed sentences keeps the contexts from being
        // perfectly separable.
        if (chance(0.25)) {
          person_sentence(subject, family_, negative_, words);
        } else {
          person_sentence(subject, career_, positive_, words);
        }
        break;
      }
      case Theme::Female: {
        Picker& subject = chance(0.5) ? female_names_ : female_words_;
        if (chance(0.25)) {
          person_sentence(subject, career_, positive_, words);
        } else {
          person_sentence(subject, family_, negative_, words);
        }
        break;
      }
      case Theme::Neutral:
        neutral_sentence(words);
        break;
    }
  }

  void render(const std::vector<std::string>& words, bool first, std::string& out) {
    if (!first) out += ' ';
    const int comma_at =
        words.size() > 3 && chance(0.2) ? 1 + roll(static_cast<int>(words.size()) - 2)
                                        : -1;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i > 0) out += ' ';
      if (i == 0 && first) {
        std::string w = words[i];
        w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
        out += w;
      } else {
        out += words[i];
      }
      if (static_cast<int>(i) == comma_at) out += ',';
    }
    const double r = unit_(rng_);
    out += r < 0.8 ? "." : r < 0.9 ? "!" : r < 0.95 ? "..." : "?";
  }

  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  Picker flowers_, insects_, pleasant_, unpleasant_;
  Picker male_names_, female_names_, male_words_, female_words_;
  Picker career_, family_, positive_, negative_;
  const std::vector<std::string>& filler_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate a deterministic synthetic review corpus"};
  std::string out_path;
  uint64_t tokens = 1'200'000;
  uint64_t seed = 7;
  app.add_option("--out", out_path, "corpus file to write")->required();
  app.add_option("--tokens", tokens, "minimum word token count");
  app.add_option("--seed", seed, "generator seed");
  CLI11_PARSE(app, argc, argv);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write corpus file: " << out_path << '\n';
    return 2;
  }
  Generator gen(seed);
  uint64_t emitted = 0;
  uint64_t reviews = 0;
  std::string line;
  while (emitted < tokens) {
    line.clear();
    emitted += gen.review(line);
    line += '\n';
    out << line;
    ++reviews;
  }
  out.flush();
  if (!out) {
    std::cerr << "error: failed writing corpus file: " << out_path << '\n';
    return 2;
  }
  std::cerr << "gencorpus: " << emitted << " tokens in " << reviews
            << " reviews -> " << out_path << '\n';
  return 0;
}
