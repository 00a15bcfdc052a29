#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dla/lexicon.hpp"

namespace dla {

struct FoldAssignment {
  std::size_t n_folds = 0;
  std::map<std::string, std::size_t> fold_of;

  std::vector<std::string> lexemes_in(std::size_t fold) const;
  std::set<std::string> lexemes_outside(std::size_t fold) const;
};

/// Lexeme-level stratified split. Types are visited rarest first; each of a
/// type's still-unassigned lexemes (seed-shuffled) goes to the fold with room
/// that holds the fewest lexemes of that type (then the smallest, then the
/// lowest index). Fold sizes differ by at most one.
FoldAssignment stratified_folds(const SeedLexicon& lexicon, std::size_t n = 10, std::uint64_t seed = 0);

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;
};

/// Empty hypothesis set: precision 1. Empty gold set: recall 1. F is 0 when P+R is 0.
PRF type_prf(const EntrySet& hypothesised, const EntrySet& gold);

/// Token counts of gold entries in a held-out treebank, keyed by (lexeme, type name).
class TreebankFreqs {
 public:
  void set(const std::string& lexeme, const std::string& type, std::uint64_t count);
  std::uint64_t get(const std::string& lexeme, const std::string& type) const;
  std::uint64_t get(const LexicalEntry& e) const { return get(e.lexeme, e.type.name); }
  const std::map<std::pair<std::string, std::string>, std::uint64_t>& counts() const { return counts_; }
  bool empty() const { return counts_.empty(); }

 private:
  std::map<std::pair<std::string, std::string>, std::uint64_t> counts_;
};

/// Reads `lexeme<TAB>type<TAB>count` lines. With a gold lexicon, rows for
/// entries it does not contain are dropped and counted in `dropped`.
TreebankFreqs load_treebank_freqs(std::istream& in, const SeedLexicon* gold = nullptr, std::size_t* dropped = nullptr);
TreebankFreqs load_treebank_freqs_file(const std::string& path, const SeedLexicon* gold = nullptr,
                                       std::size_t* dropped = nullptr);

/// Share of the gold token mass covered by correct hypotheses:
/// sum freq(H ∩ G) / sum freq(G). Throws when the gold mass is zero.
double token_accuracy(const EntrySet& hypothesised, const EntrySet& gold, const TreebankFreqs& freqs);

inline constexpr std::string_view kTokenAccuracyDefinition =
    "token_accuracy = sum of treebank frequency over correct hypothesised entries / "
    "sum of treebank frequency over all gold entries in scope";

struct ReportRow {
  std::string method;
  std::string word_class;  // noun|verb|adj|adv|all
  std::string fold;        // fold index, or "all" for the pooled row
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;
  std::optional<double> token_accuracy;
  std::size_t n_hypothesised = 0;
  std::size_t n_gold = 0;
};

struct EvaluationReport {
  std::string method;
  std::vector<ReportRow> rows;

  const ReportRow& row(const std::string& word_class, const std::string& fold) const;
  std::string to_json() const;
  std::string to_text() const;
};

EvaluationReport report_from_json(const std::string& text);

/// Predicts entries for `targets` (lexeme -> pre-identified classes) using only
/// the given training lexicon.
using AcquisitionMethod = std::function<std::map<std::string, EntrySet>(
    const SeedLexicon& train, const std::map<std::string, WordClassSet>& targets)>;

/// Scores one fold's predictions, one row per word class plus an "all" row.
std::vector<ReportRow> score_fold(const std::string& method, const std::string& fold, const EntrySet& hypothesised,
                                  const EntrySet& gold, const TreebankFreqs* freqs);

EvaluationReport cross_validate(const std::string& method_name, const AcquisitionMethod& method,
                                const SeedLexicon& lexicon, const TreebankFreqs* freqs, std::size_t n = 10,
                                std::uint64_t seed = 0);

}  // namespace dla
