#include "dla/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dla/common.hpp"
#include "dla/parallel.hpp"

namespace fs = std::filesystem;

namespace dla::cli {

namespace {

const std::vector<std::string> kPathKeys = {"lexicon", "word_list", "clusters", "corpus",  "synsets",
                                            "edges",   "treebank_freqs", "matrix", "model", "targets", "input"};

bool parse_bool(const std::string& v) {
  auto s = to_lower(v);
  if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "off" || s == "no") return false;
  throw Error("not a boolean: '" + v + "'");
}

std::size_t parse_count(const std::string& key, const std::string& v, long long min) {
  long long n = parse_int(trim(v));
  if (n < min) throw Error("'" + key + "' must be at least " + std::to_string(min));
  return static_cast<std::size_t>(n);
}

}  // namespace

std::map<std::string, std::string> ExperimentConfig::snapshot() const {
  std::map<std::string, std::string> s;
  for (const auto& k : kPathKeys) s[k] = paths.count(k) ? paths.at(k) : "";
  s["method"] = std::string(method_name(method));
  s["out"] = out;
  s["k"] = std::to_string(hp.k);
  s["top_n"] = std::to_string(hp.top_n);
  s["per_type_cap"] = std::to_string(hp.per_type_cap);
  s["total_cap"] = std::to_string(hp.total_cap);
  s["n_min"] = std::to_string(hp.n_min);
  s["n_max"] = std::to_string(hp.n_max);
  s["min_freq"] = std::to_string(hp.min_freq);
  s["sentinels"] = hp.sentinels ? "true" : "false";
  s["n_folds"] = std::to_string(hp.n_folds);
  s["seed"] = std::to_string(hp.seed);
  s["min_entries"] = std::to_string(hp.min_entries);
  s["max_sentence_length"] = std::to_string(hp.max_sentence_length);
  s["coordination"] = hp.coordination;
  return s;
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value,
                   const std::string& base_dir) {
  const std::string v(trim(value));
  try {
    if (std::find(kPathKeys.begin(), kPathKeys.end(), key) != kPathKeys.end()) {
      fs::path p(v);
      if (!v.empty() && p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
      cfg.paths[key] = v.empty() ? "" : p.lexically_normal().string();
    } else if (key == "method") {
      cfg.method = parse_method(v);
    } else if (key == "out") {
      fs::path p(v);
      if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
      cfg.out = p.lexically_normal().string();
    } else if (key == "jobs") {
      cfg.jobs = static_cast<int>(parse_count(key, v, 0));
    } else if (key == "k") {
      cfg.hp.k = static_cast<int>(parse_count(key, v, 1));
    } else if (key == "top_n") {
      cfg.hp.top_n = parse_count(key, v, 1);
    } else if (key == "per_type_cap") {
      cfg.hp.per_type_cap = parse_count(key, v, 1);
    } else if (key == "total_cap") {
      cfg.hp.total_cap = parse_count(key, v, 1);
    } else if (key == "n_min") {
      cfg.hp.n_min = parse_count(key, v, 1);
    } else if (key == "n_max") {
      cfg.hp.n_max = parse_count(key, v, 1);
    } else if (key == "min_freq") {
      cfg.hp.min_freq = parse_count(key, v, 0);
    } else if (key == "sentinels") {
      cfg.hp.sentinels = parse_bool(v);
    } else if (key == "n_folds") {
      cfg.hp.n_folds = parse_count(key, v, 2);
    } else if (key == "seed") {
      cfg.hp.seed = parse_count(key, v, 0);
    } else if (key == "min_entries") {
      cfg.hp.min_entries = parse_count(key, v, 1);
    } else if (key == "max_sentence_length") {
      cfg.hp.max_sentence_length = parse_count(key, v, 1);
    } else if (key == "coordination") {
      cfg.hp.coordination = v;
    } else {
      throw Error("unknown configuration key '" + key + "'");
    }
  } catch (const ParseError& e) {
    throw Error("bad value for '" + key + "': " + e.what());
  }
  if (cfg.hp.n_min > cfg.hp.n_max) throw Error("n_min must not exceed n_max");
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  const auto base = fs::path(path).parent_path().string();
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = chomp(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("config line is not key = value", lineno);
    try {
      apply_setting(cfg, std::string(trim(line.substr(0, eq))), std::string(line.substr(eq + 1)), base);
    } catch (const Error& e) {
      throw ParseError(path + ": " + e.what(), lineno);
    }
  }
}

void write_atomic(const std::string& dir, const std::string& name, const std::string& content) {
  fs::create_directories(dir);
  const auto final_path = fs::path(dir) / name;
  const auto tmp = fs::path(dir) / ("." + name + ".tmp");
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw Error("cannot write '" + tmp.string() + "'");
    o << content;
    o.flush();
    if (!o) throw Error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, final_path);
}

// --------------------------------------------------------------------- commands

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Collects outputs in memory and commits them together with the manifest.
class Run {
 public:
  Run(std::string command, const ExperimentConfig& cfg) : command_(std::move(command)), cfg_(cfg) {}

  const std::string& path(const std::string& key) {
    auto it = cfg_.paths.find(key);
    if (it == cfg_.paths.end() || it->second.empty())
      throw Error("missing required resource '" + key + "' (set it in the config or with --set " + key + "=PATH)");
    if (!fs::exists(it->second)) throw Error("resource '" + key + "' not found: " + it->second);
    if (!inputs_.count(it->second)) {
      Fnv1a h;
      h.update(read_file(it->second));
      inputs_[it->second] = h.hex();
    }
    return it->second;
  }
  bool has(const std::string& key) const {
    auto it = cfg_.paths.find(key);
    return it != cfg_.paths.end() && !it->second.empty();
  }

  void output(std::string name, std::string content) { outputs_.emplace_back(std::move(name), std::move(content)); }

  void commit() {
    for (const auto& [name, content] : outputs_) write_atomic(cfg_.out, name, content);
    nlohmann::json m;
    m["tool"] = "dla";
    m["version"] = kToolVersion;
    m["command"] = command_;
    m["config"] = cfg_.snapshot();
    m["inputs"] = inputs_;
    auto& outs = m["outputs"] = nlohmann::json::object();
    for (const auto& [name, content] : outputs_) {
      Fnv1a h;
      h.update(content);
      outs[name] = h.hex();
    }
    m["timestamp"] = timestamp_utc();
    write_atomic(cfg_.out, "manifest.json", m.dump(2) + "\n");
  }

 private:
  std::string command_;
  const ExperimentConfig& cfg_;
  std::map<std::string, std::string> inputs_;
  std::vector<std::pair<std::string, std::string>> outputs_;
};

SeedLexicon load_eval_lexicon(Run& run, const ExperimentConfig& cfg, std::ostream& err) {
  auto full = load_seed_lexicon_file(run.path("lexicon"));
  if (full.duplicates_collapsed())
    err << "warning: " << full.duplicates_collapsed() << " duplicate lexicon lines collapsed\n";
  auto inv = filter_inventory(full, cfg.hp.min_entries);
  auto lex = full.restrict_types(inv);
  if (lex.empty())
    throw Error("no lexical type has at least " + std::to_string(cfg.hp.min_entries) + " entries (min_entries)");
  return lex;
}

CorpusLevel level_of(Method m) {
  if (m == Method::SyntaxChunked) return CorpusLevel::Chunked;
  if (m == Method::SyntaxParsed) return CorpusLevel::Parsed;
  return CorpusLevel::Tagged;
}

MethodResources load_resources(Run& run, const ExperimentConfig& cfg, std::ostream& err) {
  MethodResources res;
  const auto m = cfg.method;
  if (run.has("word_list")) res.word_list = load_word_list_file(run.path("word_list"));
  if (m == Method::Deriv) res.clusters = load_cluster_lexicon_file(run.path("clusters"));
  if (m == Method::SyntaxTagged || m == Method::SyntaxChunked || m == Method::SyntaxParsed) {
    CorpusOptions copts{cfg.hp.max_sentence_length};
    res.corpus = parse_corpus_file(run.path("corpus"), level_of(m), copts);
    if (res.corpus->skipped)
      err << "warning: skipped " << res.corpus->skipped << " sentences longer than " << cfg.hp.max_sentence_length
          << " tokens\n";
  }
  if (m == Method::Ontology) res.ontology = load_ontology_files(run.path("synsets"), run.path("edges"));
  check_resources(m, res);
  return res;
}

std::map<std::string, WordClassSet> load_targets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open targets '" + path + "'");
  std::map<std::string, WordClassSet> out;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = chomp(raw);
    if (trim(line).empty() || line.front() == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 2) throw ParseError("targets line needs lexeme<TAB>classes", lineno);
    auto lex = to_lower(trim(f[0]));
    if (lex.empty() || has_space(lex)) throw ParseError("bad target lexeme", lineno);
    for (auto c : split(f[1], ',')) {
      auto wc = try_parse_word_class(trim(c));
      if (!wc) throw ParseError("unknown word class '" + std::string(c) + "'", lineno);
      out[lex].insert(*wc);
    }
  }
  return out;
}

std::string render_entries(const std::map<std::string, EntrySet>& predicted) {
  EntrySet all;
  for (const auto& [_, s] : predicted) all.insert(s.begin(), s.end());
  std::ostringstream o;
  write_entries(all, o);
  return o.str();
}

void cmd_extract(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  Run run("extract", cfg);
  if (!uses_features(cfg.method))
    throw Error("method '" + std::string(method_name(cfg.method)) + "' does not use a feature matrix");
  auto lex = load_eval_lexicon(run, cfg, err);
  auto res = load_resources(run, cfg, err);
  auto mx = extract_matrix(cfg.method, res, lex, cfg.hp);
  std::ostringstream o;
  write_matrix(mx, o);
  run.output("matrix.tsv", o.str());
  run.commit();
  out << "wrote " << (fs::path(cfg.out) / "matrix.tsv").string() << ": " << mx.space.size() << " features, "
      << mx.vectors.size() << " lexemes\n";
}

void cmd_train(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  Run run("train", cfg);
  if (!uses_features(cfg.method))
    throw Error("method '" + std::string(method_name(cfg.method)) + "' does not train a model");
  auto lex = load_eval_lexicon(run, cfg, err);
  std::ifstream min(run.path("matrix"));
  auto mx = read_matrix(min);
  std::set<LexicalType> inv;
  for (const auto& [_, t] : lex.inventory()) inv.insert(t);
  auto suite = train(mx.vectors, lex, inv, TrainOptions{cfg.hp.top_n, cfg.hp.k});
  suite.space_fingerprint = mx.space.fingerprint();
  std::ostringstream o;
  write_model(suite, o);
  run.output("model.txt", o.str());
  run.commit();
  std::size_t degenerate = 0;
  for (const auto& [_, tc] : suite.classifiers) degenerate += tc.degenerate;
  out << "wrote " << (fs::path(cfg.out) / "model.txt").string() << ": " << suite.classifiers.size()
      << " classifiers (" << degenerate << " degenerate)\n";
}

void cmd_predict(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  Run run("predict", cfg);
  auto targets = load_targets(run.path("targets"));
  std::map<std::string, EntrySet> predicted;
  if (uses_features(cfg.method)) {
    std::ifstream mi(run.path("model"));
    auto suite = read_model(mi);
    std::ifstream xi(run.path("matrix"));
    auto mx = read_matrix(xi);
    if (suite.space_fingerprint != mx.space.fingerprint())
      throw Error("feature-space mismatch: model was trained on space " + suite.space_fingerprint +
                  ", matrix has " + mx.space.fingerprint());
    predicted = predict_entries_batch(suite, targets, mx.vectors);
  } else {
    auto lex = load_eval_lexicon(run, cfg, err);
    auto defaults = majority_defaults(lex);
    if (cfg.method == Method::Ontology) {
      auto res = load_resources(run, cfg, err);
      predicted = vote_entries_batch(*res.ontology, targets, lex, defaults);
    } else {
      predicted = baseline_method()(lex, targets);
    }
  }
  run.output("entries.tsv", render_entries(predicted));
  run.commit();
  std::size_t n = 0;
  for (const auto& [_, s] : predicted) n += s.size();
  out << "wrote " << (fs::path(cfg.out) / "entries.tsv").string() << ": " << n << " entries for "
      << predicted.size() << " lexemes\n";
}

void cmd_xval(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  Run run("xval", cfg);
  auto lex = load_eval_lexicon(run, cfg, err);
  auto res = load_resources(run, cfg, err);
  std::optional<TreebankFreqs> freqs;
  if (run.has("treebank_freqs")) {
    std::size_t dropped = 0;
    freqs = load_treebank_freqs_file(run.path("treebank_freqs"), &lex, &dropped);
    if (dropped) err << "warning: dropped " << dropped << " treebank rows for entries outside the lexicon\n";
  }
  auto method = make_method(cfg.method, res, lex, cfg.hp);
  auto rep = cross_validate(std::string(method_name(cfg.method)), method, lex, freqs ? &*freqs : nullptr,
                            cfg.hp.n_folds, cfg.hp.seed);
  run.output("report.json", rep.to_json());
  run.output("report.txt", rep.to_text());
  run.commit();
  const auto& all = rep.row("all", "all");
  out << method_name(cfg.method) << ": type P=" << format_double(all.precision)
      << " R=" << format_double(all.recall) << " F=" << format_double(all.fscore);
  if (all.token_accuracy) out << " token_acc=" << format_double(*all.token_accuracy);
  out << "\n";
}

void cmd_report(const ExperimentConfig& cfg, std::ostream& out) {
  auto it = cfg.paths.find("input");
  std::string path = it != cfg.paths.end() && !it->second.empty() ? it->second
                                                                    : (fs::path(cfg.out) / "report.json").string();
  if (!fs::exists(path)) throw Error("report not found: " + path);
  out << report_from_json(read_file(path)).to_text();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deep lexical acquisition toolkit: extract features, train k-NN suites, predict and evaluate lexical entries"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, method, out_dir;
  std::uint64_t seed = 0;
  int jobs = 0;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "Key-value configuration file");
  auto* seed_opt = app.add_option("--seed", seed, "Random seed for fold assignment");
  auto* out_opt = app.add_option("--out", out_dir, "Output directory");
  auto* method_opt = app.add_option("--method", method,
                                    "ngram|deriv|syntax-tagged|syntax-chunked|syntax-parsed|ontology|baseline");
  auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads (0 = OpenMP default)");
  app.add_option("--set", sets, "Override a configuration key: --set key=value (repeatable)");

  std::string matrix, model, targets, input;
  auto* extract = app.add_subcommand("extract", "Write the feature matrix for the configured method");
  auto* trn = app.add_subcommand("train", "Train the classifier suite from a feature matrix");
  trn->add_option("--matrix", matrix, "Sparse matrix file");
  auto* predict = app.add_subcommand("predict", "Predict lexical entries for target lexemes");
  predict->add_option("--model", model, "Model file");
  predict->add_option("--matrix", matrix, "Sparse matrix file holding the target vectors");
  predict->add_option("--targets", targets, "Targets file: lexeme<TAB>class[,class...]");
  auto* xval = app.add_subcommand("xval", "Stratified cross-validation");
  auto* report = app.add_subcommand("report", "Print a report.json as an aligned table");
  report->add_option("--input", input, "Report JSON (default: OUT/report.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) load_config_file(cfg, config_path);
    for (const auto& s : sets) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw Error("--set expects key=value, got '" + s + "'");
      apply_setting(cfg, std::string(trim(std::string_view(s).substr(0, eq))), s.substr(eq + 1));
    }
    if (*seed_opt) cfg.hp.seed = seed;
    if (*out_opt) cfg.out = out_dir;
    if (*method_opt) cfg.method = parse_method(method);
    if (*jobs_opt) cfg.jobs = jobs;
    if (!matrix.empty()) cfg.paths["matrix"] = matrix;
    if (!model.empty()) cfg.paths["model"] = model;
    if (!targets.empty()) cfg.paths["targets"] = targets;
    if (!input.empty()) cfg.paths["input"] = input;
    set_threads(cfg.jobs);

    if (*extract) cmd_extract(cfg, out, err);
    else if (*trn) cmd_train(cfg, out, err);
    else if (*predict) cmd_predict(cfg, out, err);
    else if (*xval) cmd_xval(cfg, out, err);
    else if (*report) cmd_report(cfg, out);
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace dla::cli
