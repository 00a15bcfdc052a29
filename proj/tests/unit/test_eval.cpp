#include <doctest.h>

#include <random>
#include <sstream>

#include "dla/common.hpp"
#include "dla/eval.hpp"

using namespace dla;

namespace {

LexicalEntry entry(const std::string& lex, const std::string& type, WordClass wc = WordClass::Noun) {
  return {lex, {type, wc}};
}

SeedLexicon random_lexicon(std::mt19937_64& rng, std::size_t n_lex, bool multi = true) {
  SeedLexicon lex;
  const char* names[] = {"n_a_le", "n_b_le", "n_c_le", "v_a_le", "v_b_le", "adj_a_le"};
  const WordClass wcs[] = {WordClass::Noun, WordClass::Noun, WordClass::Noun,
                           WordClass::Verb, WordClass::Verb, WordClass::Adjective};
  for (std::size_t i = 0; i < n_lex; ++i) {
    auto t = rng() % 6;
    // skew toward the first type so strata differ in size
    if (rng() % 2) t = 0;
    lex.add("w" + std::to_string(i), {names[t], wcs[t]});
    if (multi && rng() % 5 == 0) lex.add("w" + std::to_string(i), {names[3], wcs[3]});
  }
  return lex;
}

}  // namespace

TEST_CASE("type_prf: boundary conventions") {
  EntrySet none;
  EntrySet one = {entry("a", "t")};
  auto p = type_prf(none, one);
  CHECK(p.precision == 1.0);
  CHECK(p.recall == 0.0);
  CHECK(p.fscore == 0.0);
  p = type_prf(one, none);
  CHECK(p.precision == 0.0);
  CHECK(p.recall == 1.0);
  p = type_prf(none, none);
  CHECK(p.fscore == 1.0);
  p = type_prf({entry("a", "t"), entry("a", "u")}, {entry("a", "t"), entry("b", "t"), entry("c", "t")});
  CHECK(p.precision == 0.5);
  CHECK(p.recall == doctest::Approx(1.0 / 3));
  CHECK(p.fscore == doctest::Approx(0.4));
}

TEST_CASE("type_prf: F is the harmonic mean and bounded by P and R") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    EntrySet h, g;
    for (int i = 0; i < 8; ++i) {
      if (rng() % 2) h.insert(entry("w" + std::to_string(rng() % 4), "t" + std::to_string(rng() % 2)));
      if (rng() % 2) g.insert(entry("w" + std::to_string(rng() % 4), "t" + std::to_string(rng() % 2)));
    }
    auto p = type_prf(h, g);
    CHECK(p.fscore <= std::max(p.precision, p.recall) + 1e-12);
    CHECK(p.fscore >= std::min(p.precision, p.recall) - 1e-12);
    if (p.precision + p.recall > 0)
      CHECK(p.fscore == doctest::Approx(2 * p.precision * p.recall / (p.precision + p.recall)));
  }
}

TEST_CASE("token_accuracy") {
  TreebankFreqs f;
  f.set("a", "t", 8);
  f.set("b", "t", 2);
  EntrySet gold = {entry("a", "t"), entry("b", "t")};
  CHECK(token_accuracy({entry("a", "t")}, gold, f) == doctest::Approx(0.8));
  CHECK(token_accuracy({entry("b", "t"), entry("z", "t")}, gold, f) == doctest::Approx(0.2));
  CHECK(token_accuracy(gold, gold, f) == 1.0);
  CHECK(token_accuracy({}, gold, f) == 0.0);
  CHECK_THROWS_AS(token_accuracy({}, {entry("q", "t")}, f), Error);
}

TEST_CASE("treebank frequency loading") {
  SeedLexicon gold;
  gold.add("dog", {"n_intr_le", WordClass::Noun});
  std::istringstream in("# counts\ndog\tn_intr_le\t12\ncat\tn_intr_le\t3\ndog\tv_le\t1\n");
  std::size_t dropped = 0;
  auto f = load_treebank_freqs(in, &gold, &dropped);
  CHECK(dropped == 2);
  CHECK(f.get("dog", "n_intr_le") == 12);
  std::istringstream bad("dog\tn_intr_le\t-1\n");
  CHECK_THROWS_AS(load_treebank_freqs(bad), ParseError);
}

TEST_CASE("stratified folds: partition, balance, determinism") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const bool multi = trial % 2;
    auto lex = random_lexicon(rng, 40 + rng() % 200, multi);
    std::size_t n = 2 + rng() % 9;
    auto fa = stratified_folds(lex, n, trial);
    CHECK(fa.fold_of.size() == lex.word_classes().size());
    std::vector<std::size_t> size(n);
    for (const auto& [_, f] : fa.fold_of) ++size.at(f);
    CHECK(*std::max_element(size.begin(), size.end()) - *std::min_element(size.begin(), size.end()) <= 1);

    // with one type per lexeme every type is spread almost evenly; lexemes
    // with several types are placed by their rarest one, so no bound there
    std::map<std::string, std::vector<std::size_t>> per_type;
    for (const auto& e : lex.entries()) {
      auto& v = per_type[e.type.name];
      v.resize(n);
      ++v[fa.fold_of.at(e.lexeme)];
    }
    for (const auto& [_, v] : per_type)
      if (!multi) CHECK(*std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end()) <= 2);

    auto again = stratified_folds(lex, n, trial);
    CHECK(again.fold_of == fa.fold_of);
  }
  SeedLexicon tiny;
  tiny.add("a", {"t", WordClass::Noun});
  CHECK_THROWS_AS(stratified_folds(tiny, 10), Error);
  CHECK_THROWS_AS(stratified_folds(tiny, 1), Error);
}

TEST_CASE("cross_validate with an oracle method scores perfectly") {
  std::mt19937_64 rng(47);
  auto lex = random_lexicon(rng, 100);
  AcquisitionMethod perfect = [&](const SeedLexicon& train, const std::map<std::string, WordClassSet>& targets) {
    std::map<std::string, EntrySet> out;
    for (const auto& [l, _] : targets) {
      CHECK_FALSE(train.contains(l));  // held-out lexemes never leak into training
      for (const auto& e : lex.entries_of(l)) out[l].insert(e);
    }
    return out;
  };
  auto rep = cross_validate("perfect", perfect, lex, nullptr, 10, 0);
  CHECK(rep.rows.size() == 11 * 5);
  for (const auto& r : rep.rows) {
    CHECK(r.fscore == 1.0);
    CHECK_FALSE(r.token_accuracy);
  }
  CHECK(rep.row("all", "all").n_gold == lex.size());
}

TEST_CASE("report json round trip and text table") {
  EvaluationReport rep{"ngram", {{"ngram", "noun", "0", 0.5, 0.25, 1.0 / 3, 0.75, 4, 8},
                                 {"ngram", "all", "all", 1.0, 1.0, 1.0, std::nullopt, 0, 0}}};
  auto back = report_from_json(rep.to_json());
  CHECK(back.to_json() == rep.to_json());
  CHECK(back.rows[0].fscore == rep.rows[0].fscore);
  CHECK_FALSE(back.rows[1].token_accuracy);
  auto text = rep.to_text();
  CHECK(text.find("0.3333") != std::string::npos);
  CHECK(text.find("token_accuracy =") != std::string::npos);
  CHECK_THROWS_AS(report_from_json("{"), ParseError);
  CHECK_THROWS_AS(rep.row("verb", "0"), Error);
}
