#include <doctest.h>

#include <sstream>

#include "dla/common.hpp"
#include "dla/eval.hpp"
#include "dla/methods.hpp"
#include "support/synthetic.hpp"

using namespace dla;

TEST_CASE("method names round trip") {
  for (auto m : {Method::Ngram, Method::Deriv, Method::SyntaxTagged, Method::SyntaxChunked, Method::SyntaxParsed,
                 Method::Ontology, Method::Baseline})
    CHECK(parse_method(method_name(m)) == m);
  CHECK_THROWS_AS(parse_method("bogus"), Error);
  CHECK(uses_features(Method::Deriv));
  CHECK_FALSE(uses_features(Method::Baseline));
}

TEST_CASE("missing resources are reported") {
  MethodResources none;
  CHECK_THROWS_AS(check_resources(Method::Deriv, none), Error);
  CHECK_THROWS_AS(check_resources(Method::SyntaxTagged, none), Error);
  CHECK_THROWS_AS(check_resources(Method::Ontology, none), Error);
  CHECK_NOTHROW(check_resources(Method::Ngram, none));

  MethodResources wrong;
  wrong.corpus = Corpus{CorpusLevel::Tagged, default_relations(), {}, 0};
  CHECK_THROWS_AS(check_resources(Method::SyntaxParsed, wrong), Error);
}

TEST_CASE("word list loading") {
  std::istringstream in("# header\nDog\n\n  cat  \n");
  CHECK(load_word_list(in) == std::vector<std::string>{"dog", "cat"});
}

TEST_CASE("ngram matrix covers lexicon and word list") {
  auto lex = synth::suffix_lexicon(90, 1);
  MethodResources res;
  res.word_list = std::vector<std::string>{"unseenness"};
  Hyperparameters hp;
  auto mx = extract_matrix(Method::Ngram, res, lex, hp);
  CHECK(mx.vectors.size() == lex.word_classes().size() + 1);
  CHECK(mx.space.size() <= hp.total_cap);
  CHECK(mx.space.id({"ngram", "ness"}));
  const auto& v = mx.vectors.at("unseenness");
  CHECK(v.values.count(*mx.space.id({"ngram", "ness"})));
  for (const auto& [_, val] : v.values) CHECK(val.rel <= 1.0);
}

TEST_CASE("baseline predicts the majority type per class") {
  auto lex = synth::suffix_lexicon(90, 2);
  auto rep = cross_validate("baseline", baseline_method(), lex, nullptr, 5, 0);
  const auto& all = rep.row("all", "all");
  CHECK(all.precision == doctest::Approx(all.recall));  // one guess per gold entry
  CHECK(all.fscore < 0.6);
}

TEST_CASE("ngram method learns suffix types") {
  auto lex = synth::suffix_lexicon(270, 3);
  Hyperparameters hp;
  auto method = make_method(Method::Ngram, {}, lex, hp);
  auto rep = cross_validate("ngram", method, lex, nullptr, 5, 0);
  CHECK(rep.row("all", "all").fscore > 0.9);
}

TEST_CASE("syntax-tagged method learns the right context") {
  auto lex = synth::suffix_lexicon(180, 4);
  std::istringstream in(synth::following_pos_corpus(lex, 3, 4));
  MethodResources res;
  res.corpus = parse_corpus(in, CorpusLevel::Tagged);
  auto method = make_method(Method::SyntaxTagged, res, lex, {});
  auto rep = cross_validate("syntax-tagged", method, lex, nullptr, 5, 0);
  CHECK(rep.row("all", "all").fscore > 0.9);
}
