// Command-line front end for the pipeline: vocab -> cooccur -> train ->
// weat/validate/audit, plus contingency statistics, built-in list export, and
// report assembly. Progress goes to stderr; stdout carries data only.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "embias/embias.hpp"

namespace {

embias::CorpusFormat parse_format(const std::string& name) {
  if (name == "plain") return embias::CorpusFormat::PlainLines;
  if (name == "jsonl") return embias::CorpusFormat::Jsonl;
  if (name == "csv") return embias::CorpusFormat::Csv;
  throw embias::UsageError("unknown corpus format: " + name);
}

embias::Weighting parse_weighting(const std::string& name) {
  if (name == "uniform") return embias::Weighting::Uniform;
  if (name == "inverse" || name == "inverse-distance") {
    return embias::Weighting::InverseDistance;
  }
  throw embias::UsageError("unknown weighting: " + name);
}

void write_json(const nlohmann::ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw embias::DataError("cannot write output file: " + out_path);
  out << j.dump(2) << '\n';
  if (!out) throw embias::DataError("failed writing output file: " + out_path);
}

void print_warnings(const embias::WeatResult& r) {
  for (const auto& w : r.resolution.warnings) std::cerr << "warning: " << w << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"embias: train GloVe embeddings from review corpora and audit "
               "stereotypic word associations"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read defaults from a key=value config file");

  // vocab
  auto* vocab_cmd =
      app.add_subcommand("vocab", "count tokens and write the vocabulary file");
  std::string v_in, v_format = "plain", v_field, v_out;
  uint64_t v_min_count = 5;
  vocab_cmd->add_option("--in", v_in, "corpus file")->required();
  vocab_cmd->add_option("--format", v_format, "plain|jsonl|csv")
      ->check(CLI::IsMember({"plain", "jsonl", "csv"}));
  vocab_cmd->add_option("--field", v_field, "text field name (jsonl/csv)");
  vocab_cmd->add_option("--min-count", v_min_count, "minimum token count to keep");
  vocab_cmd->add_option("--out", v_out, "vocabulary file to write")->required();
  vocab_cmd->callback([&] {
    const auto vocab =
        embias::build_vocab({v_in, parse_format(v_format), v_field}, v_min_count);
    vocab.save(v_out);
    std::cerr << "vocab: kept " << vocab.size() << " words (min count " << v_min_count
              << ") -> " << v_out << '\n';
  });

  // cooccur
  auto* co_cmd = app.add_subcommand(
      "cooccur", "count windowed co-occurrences against a vocabulary");
  std::string c_in, c_format = "plain", c_field, c_vocab, c_weighting = "inverse", c_out;
  unsigned c_window = 10, c_threads = 0;
  co_cmd->add_option("--in", c_in, "corpus file")->required();
  co_cmd->add_option("--format", c_format, "plain|jsonl|csv")
      ->check(CLI::IsMember({"plain", "jsonl", "csv"}));
  co_cmd->add_option("--field", c_field, "text field name (jsonl/csv)");
  co_cmd->add_option("--vocab", c_vocab, "vocabulary file")->required();
  co_cmd->add_option("--window", c_window, "context window size")
      ->check(CLI::Range(1u, 65535u));
  co_cmd->add_option("--weighting", c_weighting, "uniform|inverse")
      ->check(CLI::IsMember({"uniform", "inverse", "inverse-distance"}));
  co_cmd->add_option("--threads", c_threads, "worker threads (0 = all cores)")
      ->envname("EMBIAS_THREADS");
  co_cmd->add_option("--out", c_out, "matrix file to write")->required();
  co_cmd->callback([&] {
    const auto vocab = embias::Vocabulary::load(c_vocab);
    const auto m = embias::count_cooccurrences({c_in, parse_format(c_format), c_field},
                                               vocab, static_cast<int>(c_window),
                                               parse_weighting(c_weighting), c_threads);
    m.save(c_out);
    std::cerr << "cooccur: " << m.entry_count() << " entries, window " << c_window
              << ", " << embias::weighting_name(m.weighting()) << " -> " << c_out
              << '\n';
  });

  // train
  auto* train_cmd =
      app.add_subcommand("train", "fit word vectors to a co-occurrence matrix");
  std::string t_cooccur, t_vocab, t_out;
  embias::TrainConfig t_cfg;
  bool t_main_only = false;
  train_cmd->add_option("--cooccur", t_cooccur, "matrix file")->required();
  train_cmd->add_option("--vocab", t_vocab, "vocabulary file")->required();
  train_cmd->add_option("--dim", t_cfg.dim, "vector dimension");
  train_cmd->add_option("--epochs", t_cfg.epochs, "training epochs");
  train_cmd->add_option("--seed", t_cfg.seed, "init and shuffle seed");
  train_cmd->add_option("--x-max", t_cfg.x_max, "weighting cap");
  train_cmd->add_option("--alpha", t_cfg.alpha, "weighting exponent");
  train_cmd->add_option("--eta", t_cfg.learning_rate, "initial learning rate");
  train_cmd->add_flag("--deterministic", t_cfg.deterministic,
                      "single-threaded fixed-order updates");
  train_cmd->add_option("--threads", t_cfg.threads, "worker threads (0 = all cores)")
      ->envname("EMBIAS_THREADS");
  train_cmd->add_flag("--main-only", t_main_only,
                      "save w instead of the default w + w-tilde");
  train_cmd->add_option("--out", t_out, "vectors file to write")->required();
  train_cmd->callback([&] {
    const auto vocab = embias::Vocabulary::load(t_vocab);
    const auto m = embias::CooccurrenceMatrix::load(t_cooccur);
    const auto result =
        embias::train(m, vocab, t_cfg, [&](int epoch, double mean_loss) {
          std::cerr << "train: epoch " << epoch << "/" << t_cfg.epochs
                    << " mean loss " << mean_loss << '\n';
        });
    result.embeddings.save(t_out, t_main_only);
    std::cerr << "train: " << result.embeddings.size() << " vectors, dim "
              << t_cfg.dim << " -> " << t_out << '\n';
  });

  // weat
  auto* weat_cmd =
      app.add_subcommand("weat", "run one association test from a word sets file");
  std::string w_vectors, w_sets, w_out;
  uint64_t w_shuffles = 5000, w_seed = 42;
  bool w_strict = false;
  weat_cmd->add_option("--vectors", w_vectors, "vectors file")->required();
  weat_cmd->add_option("--sets", w_sets, "word sets JSON file")->required();
  weat_cmd->add_option("--shuffles", w_shuffles, "sampling budget when not exact");
  weat_cmd->add_option("--seed", w_seed, "sampling seed");
  weat_cmd->add_flag("--strict", w_strict, "error on any missing word");
  weat_cmd->add_option("--out", w_out, "result JSON file (default: stdout)");
  weat_cmd->callback([&] {
    const auto e = embias::EmbeddingSet::load(w_vectors);
    const auto ws = embias::load_word_sets(w_sets);
    const auto r = embias::run_weat(ws, e, w_shuffles, w_seed, w_strict);
    print_warnings(r);
    write_json(embias::weat_result_to_json(r), w_out);
  });

  // validate
  auto* val_cmd = app.add_subcommand(
      "validate", "flowers-vs-insects sanity check of an embedding");
  std::string va_vectors, va_out;
  uint64_t va_shuffles = 5000, va_seed = 42;
  val_cmd->add_option("--vectors", va_vectors, "vectors file")->required();
  val_cmd->add_option("--shuffles", va_shuffles, "sampling budget when not exact");
  val_cmd->add_option("--seed", va_seed, "sampling seed");
  val_cmd->add_option("--out", va_out, "result JSON file (default: stdout)");
  val_cmd->callback([&] {
    const auto e = embias::EmbeddingSet::load(va_vectors);
    const auto r = embias::validation_test(e, va_shuffles, va_seed);
    print_warnings(r);
    std::cerr << "validate: d = " << r.effect_size << ", p = " << r.p_value << '\n';
    write_json(embias::weat_result_to_json(r), va_out);
  });

  // audit
  auto* audit_cmd = app.add_subcommand(
      "audit", "validation plus the four standard comparisons");
  std::string a_vectors, a_out_dir = ".";
  uint64_t a_shuffles = 5000, a_seed = 42;
  bool a_strict = false;
  audit_cmd->add_option("--vectors", a_vectors, "vectors file")->required();
  audit_cmd->add_option("--shuffles", a_shuffles, "sampling budget when not exact");
  audit_cmd->add_option("--seed", a_seed, "sampling seed (recorded in every result)");
  audit_cmd->add_flag("--strict", a_strict, "error on any missing word");
  audit_cmd->add_option("--out-dir", a_out_dir, "directory for the 5 result JSONs");
  audit_cmd->callback([&] {
    const auto e = embias::EmbeddingSet::load(a_vectors);
    std::filesystem::create_directories(a_out_dir);
    std::vector<embias::WeatResult> results;
    results.push_back(embias::validation_test(e, a_shuffles, a_seed));
    for (const auto& ws : embias::lists::standard_audits()) {
      results.push_back(embias::run_weat(ws, e, a_shuffles, a_seed, a_strict));
    }
    for (const auto& r : results) {
      print_warnings(r);
      const auto path = std::filesystem::path(a_out_dir) / (r.name + ".json");
      write_json(embias::weat_result_to_json(r), path.string());
      std::cerr << "audit: " << r.name << " S = " << r.S << ", d = " << r.effect_size
                << ", p = " << r.p_value << (r.p_exact ? " (exact)" : " (sampled)")
                << " -> " << path.string() << '\n';
    }
  });

  // stats
  auto* stats_cmd =
      app.add_subcommand("stats", "contingency-table independence tests");
  stats_cmd->require_subcommand(1);
  std::string s_table;
  auto add_table_sub = [&](const char* name, const char* desc) {
    auto* sub = stats_cmd->add_subcommand(name, desc);
    sub->add_option("--table", s_table, "labeled CSV table")->required();
    return sub;
  };
  add_table_sub("chisq", "Pearson chi-square test")->callback([&] {
    const auto t = embias::ContingencyTable::load_csv(s_table);
    const auto r = embias::chi_square(t);
    write_json({{"test", "chi_square"},
                {"statistic", r.statistic},
                {"df", r.df},
                {"p_value", r.p_value}},
               "");
  });
  add_table_sub("gtest", "log-likelihood-ratio G-test")->callback([&] {
    const auto t = embias::ContingencyTable::load_csv(s_table);
    const auto r = embias::g_test(t);
    write_json({{"test", "g_test"},
                {"statistic", r.statistic},
                {"df", r.df},
                {"p_value", r.p_value}},
               "");
  });
  add_table_sub("residuals", "adjusted and plain standardized residuals")
      ->callback([&] {
        const auto t = embias::ContingencyTable::load_csv(s_table);
        nlohmann::ordered_json j;
        j["rows"] = nlohmann::ordered_json::array();
        j["cols"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < t.rows(); ++i) j["rows"].push_back(t.row_label(i));
        for (std::size_t k = 0; k < t.cols(); ++k) j["cols"].push_back(t.col_label(k));
        j["adjusted"] = embias::standardized_residuals(t);
        j["pearson"] = embias::pearson_residuals(t);
        write_json(j, "");
      });

  // lists
  auto* lists_cmd = app.add_subcommand("lists", "built-in word lists");
  auto* export_cmd =
      lists_cmd->add_subcommand("export", "dump all built-in lists as JSON");
  std::string l_out;
  export_cmd->add_option("--out", l_out, "output file (default: stdout)");
  export_cmd->callback([&] { write_json(embias::lists::export_builtins(), l_out); });
  lists_cmd->require_subcommand(1);

  // report
  auto* report_cmd = app.add_subcommand(
      "report", "assemble result JSONs into a Markdown + JSON report");
  std::vector<std::string> r_in;
  std::string r_out, r_title = "Embedding bias audit";
  std::vector<std::string> r_meta;
  report_cmd->add_option("--in", r_in, "result JSON files")->required()->expected(-1);
  report_cmd->add_option("--out", r_out, "Markdown output path (JSON lands beside it)")
      ->required();
  report_cmd->add_option("--title", r_title, "report title");
  report_cmd->add_option("--meta", r_meta, "extra metadata entries, key=value");
  report_cmd->callback([&] {
    std::vector<embias::WeatResult> results;
    for (const auto& path : r_in) {
      std::ifstream in(path);
      if (!in) throw embias::DataError("cannot open result file: " + path);
      auto j = nlohmann::json::parse(in, nullptr, false);
      if (j.is_discarded()) {
        throw embias::DataError("result file is not valid JSON: " + path);
      }
      results.push_back(embias::weat_result_from_json(j, path));
    }
    nlohmann::ordered_json meta;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const auto& path : r_in) inputs.push_back(path);
    meta["inputs"] = inputs;
    for (const auto& kv : r_meta) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw embias::UsageError("--meta entries must look like key=value: " + kv);
      }
      meta[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    const auto rep = embias::compose_report(results, meta, r_title);
    embias::validate_report(rep.json);
    std::ofstream md(r_out);
    if (!md) throw embias::DataError("cannot write report file: " + r_out);
    md << rep.markdown;
    if (!md) throw embias::DataError("failed writing report file: " + r_out);
    const auto json_path = std::filesystem::path(r_out).replace_extension(".json");
    write_json(rep.json, json_path.string());
    std::cerr << "report: " << results.size() << " comparisons -> " << r_out << " and "
              << json_path.string() << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const embias::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const embias::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
