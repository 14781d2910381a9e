#pragma once

// Audit report assembly. The JSON document is the source of truth and the
// Markdown rendering is derived from it. Floats are rounded to 6 significant
// digits before they enter the document and there are no timestamps, so
// regenerating from the same inputs is byte-identical.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "embias/error.hpp"
#include "embias/weat.hpp"

namespace embias {

namespace detail {

inline std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline double round6(double v) { return std::strtod(fmt6(v).c_str(), nullptr); }

inline nlohmann::ordered_json pairing_json6(const PairingSum& p) {
  return {{"sum", round6(p.sum)}, {"mean", round6(p.mean)}};
}

// The statistic decomposes as S = lead_XA + lead_YB where lead_XA is X's edge
// over Y on attribute A and lead_YB is Y's edge over X on B; the larger lead
// on the winning side names the driver.
inline std::string direction_sentence(const WeatResult& r) {
  if (r.S == 0.0) return "no direction";
  const double lead_xa = r.x_to_a.sum - r.y_to_a.sum;
  const double lead_yb = r.y_to_b.sum - r.x_to_b.sum;
  if (r.S > 0.0) {
    return lead_xa >= lead_yb
               ? "bias driven by higher association of X with A"
               : "bias driven by higher association of Y with B";
  }
  return -lead_xa >= -lead_yb
             ? "bias driven by higher association of Y with A"
             : "bias driven by higher association of X with B";
}

}  // namespace detail

struct Report {
  nlohmann::ordered_json json;
  std::string markdown;
};

inline nlohmann::ordered_json comparison_json(const WeatResult& r) {
  nlohmann::ordered_json c;
  c["name"] = r.name;
  c["S"] = detail::round6(r.S);
  c["effect_size"] = detail::round6(r.effect_size);
  c["p_value"] = detail::round6(r.p_value);
  c["p_mode"] = r.p_exact ? "exact" : "sampled";
  c["p_evaluations"] = r.p_evaluations;
  c["seed"] = r.seed;
  c["stddev_convention"] = r.stddev_convention;
  c["sizes"] = {{"X", r.resolved.X.size()},
                {"Y", r.resolved.Y.size()},
                {"A", r.resolved.A.size()},
                {"B", r.resolved.B.size()}};
  c["net_similarity"] = {{"X", detail::pairing_json6(r.net_x)},
                         {"Y", detail::pairing_json6(r.net_y)}};
  c["pairings"] = {{"X_A", detail::pairing_json6(r.x_to_a)},
                   {"X_B", detail::pairing_json6(r.x_to_b)},
                   {"Y_A", detail::pairing_json6(r.y_to_a)},
                   {"Y_B", detail::pairing_json6(r.y_to_b)}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.decomposition) {
    rows.push_back({{"attribute", row.attribute},
                    {"X", detail::pairing_json6(row.x)},
                    {"Y", detail::pairing_json6(row.y)},
                    {"effect_size", detail::round6(row.effect_size)},
                    {"p_value", detail::round6(row.p_value)},
                    {"p_mode", row.p_exact ? "exact" : "sampled"},
                    {"p_evaluations", row.p_evaluations}});
  }
  c["decomposition"] = rows;
  c["direction"] = detail::direction_sentence(r);
  c["warnings"] = r.resolution.warnings;
  return c;
}

namespace detail {

inline std::string markdown_from_report(const nlohmann::ordered_json& doc) {
  std::string md;
  md += "# " + doc.at("title").get<std::string>() + "\n\n";

  const auto& meta = doc.at("metadata");
  if (!meta.empty()) {
    for (const auto& [k, v] : meta.items()) {
      md += "- " + k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    md += "\n";
  }

  md += "## Summary\n\n";
  md += "| Comparison | S | Effect size d | p-value | Test |\n";
  md += "|---|---:|---:|---:|---|\n";
  for (const auto& c : doc.at("comparisons")) {
    md += "| " + c.at("name").get<std::string>() + " | " + fmt6(c.at("S").get<double>()) +
          " | " + fmt6(c.at("effect_size").get<double>()) + " | " +
          fmt6(c.at("p_value").get<double>()) + " | " +
          c.at("p_mode").get<std::string>() + " (" +
          std::to_string(c.at("p_evaluations").get<uint64_t>()) + ") |\n";
  }
  md += "\n";

  for (const auto& c : doc.at("comparisons")) {
    md += "## " + c.at("name").get<std::string>() + "\n\n";
    const auto& sizes = c.at("sizes");
    md += "Sets: |X|=" + std::to_string(sizes.at("X").get<std::size_t>()) +
          ", |Y|=" + std::to_string(sizes.at("Y").get<std::size_t>()) +
          ", |A|=" + std::to_string(sizes.at("A").get<std::size_t>()) +
          ", |B|=" + std::to_string(sizes.at("B").get<std::size_t>()) + "; seed " +
          std::to_string(c.at("seed").get<uint64_t>()) + "; stddev " +
          c.at("stddev_convention").get<std::string>() + ".\n\n";
    md += "- S = " + fmt6(c.at("S").get<double>()) + ", d = " +
          fmt6(c.at("effect_size").get<double>()) + ", p = " +
          fmt6(c.at("p_value").get<double>()) + " (" + c.at("p_mode").get<std::string>() +
          " over " + std::to_string(c.at("p_evaluations").get<uint64_t>()) +
          (c.at("p_mode").get<std::string>() == "exact" ? " partitions)" : " shuffles)") +
          "\n";
    const auto& net = c.at("net_similarity");
    md += "- Net similarity X: sum " + fmt6(net.at("X").at("sum").get<double>()) +
          ", mean " + fmt6(net.at("X").at("mean").get<double>()) + "; Y: sum " +
          fmt6(net.at("Y").at("sum").get<double>()) + ", mean " +
          fmt6(net.at("Y").at("mean").get<double>()) + "\n";
    md += "- Direction: " + c.at("direction").get<std::string>() + "\n\n";

    md += "| Pairing | Sum | Mean |\n|---|---:|---:|\n";
    for (const char* key : {"X_A", "X_B", "Y_A", "Y_B"}) {
      const auto& p = c.at("pairings").at(key);
      md += std::string("| ") + key + " | " + fmt6(p.at("sum").get<double>()) + " | " +
            fmt6(p.at("mean").get<double>()) + " |\n";
    }
    md += "\n";

    md += "| Contrast | X sum | Y sum | d | p | Test |\n|---|---:|---:|---:|---:|---|\n";
    for (const auto& row : c.at("decomposition")) {
      md += "| X vs Y on " + row.at("attribute").get<std::string>() + " | " +
            fmt6(row.at("X").at("sum").get<double>()) + " | " +
            fmt6(row.at("Y").at("sum").get<double>()) + " | " +
            fmt6(row.at("effect_size").get<double>()) + " | " +
            fmt6(row.at("p_value").get<double>()) + " | " +
            row.at("p_mode").get<std::string>() + " (" +
            std::to_string(row.at("p_evaluations").get<uint64_t>()) + ") |\n";
    }
    md += "\n";

    const auto& warnings = c.at("warnings");
    if (!warnings.empty()) {
      md += "Warnings:\n";
      for (const auto& w : warnings) md += "- " + w.get<std::string>() + "\n";
      md += "\n";
    }
  }
  return md;
}

}  // namespace detail

inline Report compose_report(const std::vector<WeatResult>& results,
                             const nlohmann::ordered_json& metadata,
                             const std::string& title = "Embedding bias audit") {
  if (results.empty()) throw DataError("report needs at least one result");
  Report rep;
  rep.json["title"] = title;
  rep.json["metadata"] = metadata.is_null() ? nlohmann::ordered_json::object() : metadata;
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  for (const auto& r : results) comps.push_back(comparison_json(r));
  rep.json["comparisons"] = comps;
  rep.markdown = detail::markdown_from_report(rep.json);
  return rep;
}

// Structural check mirroring docs/report-schema.json; throws DataError on the
// first violation.
inline void validate_report(const nlohmann::json& doc) {
  auto fail = [](const std::string& what) -> void {
    throw DataError("report schema violation: " + what);
  };
  if (!doc.is_object()) fail("document must be an object");
  if (!doc.contains("title") || !doc.at("title").is_string()) {
    fail("\"title\" must be a string");
  }
  if (!doc.contains("metadata") || !doc.at("metadata").is_object()) {
    fail("\"metadata\" must be an object");
  }
  if (!doc.contains("comparisons") || !doc.at("comparisons").is_array() ||
      doc.at("comparisons").empty()) {
    fail("\"comparisons\" must be a nonempty array");
  }
  auto require_pairing = [&](const nlohmann::json& j, const std::string& ctx) {
    if (!j.is_object() || !j.contains("sum") || !j.at("sum").is_number() ||
        !j.contains("mean") || !j.at("mean").is_number()) {
      fail(ctx + " must be {sum: number, mean: number}");
    }
  };
  for (const auto& c : doc.at("comparisons")) {
    const std::string ctx =
        "comparison \"" + (c.contains("name") && c.at("name").is_string()
                               ? c.at("name").get<std::string>()
                               : std::string("?")) +
        "\"";
    if (!c.is_object() || !c.contains("name") || !c.at("name").is_string()) {
      fail("every comparison needs a string \"name\"");
    }
    for (const char* key : {"S", "effect_size", "p_value"}) {
      if (!c.contains(key) || !c.at(key).is_number()) {
        fail(ctx + ": \"" + key + "\" must be a number");
      }
    }
    const double p = c.at("p_value").get<double>();
    if (p < 0.0 || p > 1.0) fail(ctx + ": p_value outside [0,1]");
    if (!c.contains("p_mode") ||
        (c.at("p_mode") != "exact" && c.at("p_mode") != "sampled")) {
      fail(ctx + ": \"p_mode\" must be \"exact\" or \"sampled\"");
    }
    for (const char* key : {"p_evaluations", "seed"}) {
      if (!c.contains(key) || !c.at(key).is_number_unsigned()) {
        fail(ctx + ": \"" + key + "\" must be a nonnegative integer");
      }
    }
    if (!c.contains("sizes") || !c.at("sizes").is_object()) fail(ctx + ": missing sizes");
    for (const char* key : {"X", "Y", "A", "B"}) {
      if (!c.at("sizes").contains(key) || !c.at("sizes").at(key).is_number_unsigned() ||
          c.at("sizes").at(key).get<uint64_t>() == 0) {
        fail(ctx + ": sizes." + key + " must be a positive integer");
      }
    }
    if (!c.contains("net_similarity") || !c.at("net_similarity").is_object()) {
      fail(ctx + ": missing net_similarity");
    }
    require_pairing(c.at("net_similarity").at("X"), ctx + ": net_similarity.X");
    require_pairing(c.at("net_similarity").at("Y"), ctx + ": net_similarity.Y");
    if (!c.contains("pairings") || !c.at("pairings").is_object()) {
      fail(ctx + ": missing pairings");
    }
    for (const char* key : {"X_A", "X_B", "Y_A", "Y_B"}) {
      if (!c.at("pairings").contains(key)) fail(ctx + ": pairings." + key + " missing");
      require_pairing(c.at("pairings").at(key), ctx + ": pairings." + std::string(key));
    }
    if (!c.contains("decomposition") || !c.at("decomposition").is_array() ||
        c.at("decomposition").size() != 2) {
      fail(ctx + ": \"decomposition\" must be an array of 2 rows");
    }
    for (const auto& row : c.at("decomposition")) {
      if (!row.contains("attribute") || !row.at("attribute").is_string()) {
        fail(ctx + ": decomposition rows need an \"attribute\" label");
      }
      require_pairing(row.at("X"), ctx + ": decomposition X");
      require_pairing(row.at("Y"), ctx + ": decomposition Y");
      for (const char* key : {"effect_size", "p_value"}) {
        if (!row.contains(key) || !row.at(key).is_number()) {
          fail(ctx + ": decomposition \"" + key + "\" must be a number");
        }
      }
    }
    if (!c.contains("direction") || !c.at("direction").is_string() ||
        c.at("direction").get<std::string>().empty()) {
      fail(ctx + ": \"direction\" must be a nonempty string");
    }
    if (!c.contains("warnings") || !c.at("warnings").is_array()) {
      fail(ctx + ": \"warnings\" must be an array");
    }
  }
}

}  // namespace embias
