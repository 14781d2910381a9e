#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "embias/report.hpp"
#include "support/temp.hpp"

using embias::WeatResult;
using Catch::Matchers::ContainsSubstring;

namespace {

// A self-consistent result built from the four pairing sums; no embedding
// involved, these tests exercise rendering only.
WeatResult make_result(const std::string& name, double xa, double xb, double ya,
                       double yb) {
  WeatResult r;
  r.name = name;
  r.resolved = {name, {"x1", "x2"}, {"y1", "y2"}, {"a1", "a2"}, {"b1", "b2"}};
  r.x_to_a = {xa, xa / 2.0};
  r.x_to_b = {xb, xb / 2.0};
  r.y_to_a = {ya, ya / 2.0};
  r.y_to_b = {yb, yb / 2.0};
  r.net_x = {xa - xb, (xa - xb) / 2.0};
  r.net_y = {ya - yb, (ya - yb) / 2.0};
  r.S = r.net_x.sum - r.net_y.sum;
  r.effect_size = 1.23456789;
  r.p_value = 0.0123456789;
  r.p_exact = true;
  r.p_evaluations = 70;
  r.n_shuffles = 5000;
  r.seed = 42;
  r.per_word_s = {{"x1", 0.5}, {"x2", 0.6}, {"y1", -0.4}, {"y2", -0.3}};
  r.decomposition.push_back({"A", r.x_to_a, r.y_to_a, 0.5, 0.25, true, 70});
  r.decomposition.push_back({"B", r.x_to_b, r.y_to_b, -0.5, 0.75, true, 70});
  return r;
}

}  // namespace

TEST_CASE("direction names the dominant lead") {
  auto direction = [](double xa, double xb, double ya, double yb) {
    return embias::detail::direction_sentence(make_result("d", xa, xb, ya, yb));
  };
  CHECK(direction(4, 1, 1, 2) == "bias driven by higher association of X with A");
  CHECK(direction(2, 1, 1, 4) == "bias driven by higher association of Y with B");
  CHECK(direction(1, 2, 4, 1) == "bias driven by higher association of Y with A");
  CHECK(direction(1, 4, 2, 1) == "bias driven by higher association of X with B");
  CHECK(direction(1, 1, 1, 1) == "no direction");
}

TEST_CASE("comparison json rounds to six significant digits") {
  const auto r = make_result("demo", 0.123456789, 0.0, 0.01, 0.02);
  const auto c = embias::comparison_json(r);
  CHECK(c["S"].get<double>() == embias::detail::round6(r.S));
  CHECK(c["effect_size"].get<double>() == 1.23457);
  CHECK(c["p_value"].get<double>() == 0.0123457);
  CHECK(c["p_mode"] == "exact");
  CHECK(c["sizes"]["X"] == 2);
  CHECK(c["pairings"]["X_A"]["sum"].get<double>() == 0.123457);
  CHECK(c["decomposition"].size() == 2);
  CHECK(embias::detail::fmt6(0.123456789) == "0.123457");
  CHECK(embias::detail::fmt6(1234567.0) == "1.23457e+06");
  CHECK(embias::detail::fmt6(0.5) == "0.5");
}

TEST_CASE("composed reports validate and carry every section") {
  std::vector<WeatResult> results{make_result("alpha", 4, 1, 1, 2),
                                  make_result("beta", 1, 2, 4, 1)};
  results[1].p_exact = false;
  results[1].p_evaluations = 5000;
  results[1].resolution.warnings = {"dropping 'zz' from X: not in embedding vocabulary"};

  nlohmann::ordered_json meta{{"corpus", "demo"}, {"tokens", 12345}};
  const auto rep = embias::compose_report(results, meta, "Demo audit");
  CHECK_NOTHROW(embias::validate_report(rep.json));
  CHECK(rep.json["title"] == "Demo audit");
  CHECK(rep.json["comparisons"].size() == 2);

  CHECK_THAT(rep.markdown, ContainsSubstring("# Demo audit"));
  CHECK_THAT(rep.markdown, ContainsSubstring("- corpus: demo"));
  CHECK_THAT(rep.markdown, ContainsSubstring("- tokens: 12345"));
  CHECK_THAT(rep.markdown, ContainsSubstring("## Summary"));
  CHECK_THAT(rep.markdown, ContainsSubstring("| Comparison | S | Effect size d |"));
  CHECK_THAT(rep.markdown, ContainsSubstring("## alpha"));
  CHECK_THAT(rep.markdown,
             ContainsSubstring("Sets: |X|=2, |Y|=2, |A|=2, |B|=2; seed 42"));
  CHECK_THAT(rep.markdown, ContainsSubstring("(exact over 70 partitions)"));
  CHECK_THAT(rep.markdown, ContainsSubstring("(sampled over 5000 shuffles)"));
  CHECK_THAT(rep.markdown,
             ContainsSubstring("- Direction: bias driven by higher association of X "
                               "with A"));
  CHECK_THAT(rep.markdown, ContainsSubstring("| X_A | 4 | 2 |"));
  CHECK_THAT(rep.markdown, ContainsSubstring("| X vs Y on A |"));
  CHECK_THAT(rep.markdown, ContainsSubstring("Warnings:\n- dropping 'zz' from X"));

  const auto again = embias::compose_report(results, meta, "Demo audit");
  CHECK(rep.json.dump(2) == again.json.dump(2));
  CHECK(rep.markdown == again.markdown);
}

TEST_CASE("metadata is optional and null collapses to an empty object") {
  const std::vector<WeatResult> one{make_result("solo", 2, 1, 1, 1)};
  const auto rep = embias::compose_report(one, nullptr);
  CHECK(rep.json["metadata"].is_object());
  CHECK(rep.json["metadata"].empty());
  CHECK(rep.json["title"] == "Embedding bias audit");
  CHECK_NOTHROW(embias::validate_report(rep.json));
  CHECK_THROWS_WITH(embias::compose_report({}, nullptr),
                    ContainsSubstring("report needs at least one result"));
}

TEST_CASE("validator pinpoints schema violations") {
  const std::vector<WeatResult> one{make_result("solo", 2, 1, 1, 1)};
  const auto good = embias::compose_report(one, nullptr).json;

  auto expect = [&](nlohmann::ordered_json doc, const std::string& what) {
    CHECK_THROWS_WITH(embias::validate_report(doc), ContainsSubstring(what));
  };

  auto doc = good;
  doc.erase("title");
  expect(doc, "\"title\" must be a string");

  doc = good;
  doc["metadata"] = 3;
  expect(doc, "\"metadata\" must be an object");

  doc = good;
  doc["comparisons"] = nlohmann::ordered_json::array();
  expect(doc, "\"comparisons\" must be a nonempty array");

  doc = good;
  doc["comparisons"][0].erase("name");
  expect(doc, "string \"name\"");

  doc = good;
  doc["comparisons"][0]["p_value"] = 1.5;
  expect(doc, "p_value outside [0,1]");

  doc = good;
  doc["comparisons"][0]["p_mode"] = "both";
  expect(doc, "\"p_mode\" must be \"exact\" or \"sampled\"");

  doc = good;
  doc["comparisons"][0]["seed"] = -1;
  expect(doc, "\"seed\" must be a nonnegative integer");

  doc = good;
  doc["comparisons"][0]["sizes"]["B"] = 0;
  expect(doc, "sizes.B must be a positive integer");

  doc = good;
  doc["comparisons"][0]["pairings"].erase("Y_B");
  expect(doc, "pairings.Y_B missing");

  doc = good;
  doc["comparisons"][0]["decomposition"].erase(1);
  expect(doc, "\"decomposition\" must be an array of 2 rows");

  doc = good;
  doc["comparisons"][0]["direction"] = "";
  expect(doc, "\"direction\" must be a nonempty string");

  doc = good;
  doc["comparisons"][0]["warnings"] = "none";
  expect(doc, "\"warnings\" must be an array");

  expect(nlohmann::ordered_json(7), "document must be an object");
}
