#include <doctest.h>

#include <random>
#include <sstream>

#include "dla/common.hpp"
#include "dla/lexicon.hpp"

using namespace dla;

namespace {

SeedLexicon parse(const std::string& text) {
  std::istringstream in(text);
  return load_seed_lexicon(in);
}

SeedLexicon with_counts(const std::vector<std::pair<std::string, std::size_t>>& types, WordClass wc) {
  SeedLexicon lex;
  for (const auto& [name, n] : types)
    for (std::size_t i = 0; i < n; ++i) lex.add(name + "_w" + std::to_string(i), {name, wc});
  return lex;
}

}  // namespace

TEST_CASE("load: single well-formed line") {
  auto lex = parse("dog\tnoun\tn_intr_le\n");
  CHECK(lex.size() == 1);
  CHECK(lex.word_classes("dog") == WordClassSet{WordClass::Noun});
}

TEST_CASE("load: one lexeme under two word classes") {
  auto lex = parse("dog\tnoun\tn_intr_le\ndog\tverb\tv_np_trans_le\n");
  CHECK(lex.size() == 2);
  CHECK(lex.word_classes("dog") == WordClassSet{WordClass::Noun, WordClass::Verb});
}

TEST_CASE("load: errors") {
  CHECK_THROWS_AS(parse("dog\tnoun\n"), ParseError);
  CHECK_THROWS_AS(parse("dog\tpronoun\tn_intr_le\n"), ParseError);
  CHECK_THROWS_AS(parse("dog\tnoun\tx_le\ncat\tverb\tx_le\n"), ParseError);
  CHECK_THROWS_AS(parse("hot dog\tnoun\tn_intr_le\n"), ParseError);
  try {
    parse("# header\ndog\tnoun\tn_intr_le\ncat\tnoun\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("load: comments skipped, lexemes lowercased, duplicates collapsed") {
  auto lex = parse("# comment\nDog\tnoun\tn_intr_le\ndog\tnoun\tn_intr_le\r\n\n");
  CHECK(lex.size() == 1);
  CHECK(lex.contains("dog"));
  CHECK(lex.duplicates_collapsed() == 1);
}

TEST_CASE("serialize then load is the identity") {
  std::mt19937 rng(7);
  const char* types[] = {"n_intr_le", "n_mass_le", "v_np_trans_le", "adj_intrans_le", "adv_int_vp_le"};
  const WordClass classes[] = {WordClass::Noun, WordClass::Noun, WordClass::Verb, WordClass::Adjective,
                               WordClass::Adverb};
  for (int trial = 0; trial < 20; ++trial) {
    SeedLexicon lex;
    for (int i = 0; i < 30; ++i) {
      auto t = rng() % 5;
      lex.add("w" + std::to_string(rng() % 25), {types[t], classes[t]});
    }
    std::ostringstream out;
    serialize(lex, out);
    auto back = parse(out.str());
    CHECK(back.entries() == lex.entries());
    CHECK(back.word_classes() == lex.word_classes());
  }
}

TEST_CASE("filter_inventory") {
  auto lex = with_counts({{"a_le", 12}, {"b_le", 9}}, WordClass::Noun);
  CHECK(filter_inventory(lex, 1).size() == 2);
  auto ten = filter_inventory(lex, 10);
  REQUIRE(ten.size() == 1);
  CHECK(ten.begin()->name == "a_le");
  CHECK(filter_inventory(SeedLexicon{}, 10).empty());
  CHECK_THROWS(filter_inventory(lex, 0));

  // monotone in min_entries
  auto mixed = with_counts({{"a", 3}, {"b", 5}, {"c", 8}, {"d", 1}}, WordClass::Verb);
  for (std::size_t a = 1; a < 10; ++a)
    for (std::size_t b = a; b < 10; ++b) {
      auto ra = filter_inventory(mixed, a), rb = filter_inventory(mixed, b);
      for (const auto& t : rb) CHECK(ra.count(t));
    }
}

TEST_CASE("majority_default") {
  SeedLexicon lex;
  for (int i = 0; i < 5; ++i) lex.add("n" + std::to_string(i), {"n_intr_le", WordClass::Noun});
  lex.add("x", {"n_mass_le", WordClass::Noun});
  for (int i = 0; i < 3; ++i) lex.add("r" + std::to_string(i), {"adv_int_vp_le", WordClass::Adverb});
  lex.add("y", {"adv_other_le", WordClass::Adverb});
  CHECK(majority_default(WordClass::Noun, lex).name == "n_intr_le");
  CHECK(majority_default(WordClass::Adverb, lex).name == "adv_int_vp_le");
  CHECK_THROWS_AS(majority_default(WordClass::Verb, lex), Error);

  auto tie = with_counts({{"y_le", 3}, {"x_le", 3}}, WordClass::Adjective);
  CHECK(majority_default(WordClass::Adjective, tie).name == "x_le");

  for (auto wc : kWordClasses)
    if (wc == WordClass::Noun || wc == WordClass::Adverb) CHECK(majority_default(wc, lex).word_class == wc);

  auto defaults = majority_defaults(lex);
  CHECK(defaults.size() == 4);
  CHECK(defaults.at(WordClass::Verb).name == "v_np_trans_le");
}
