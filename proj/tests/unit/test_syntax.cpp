#include <doctest.h>

#include <random>
#include <sstream>

#include "dla/common.hpp"
#include "dla/parallel.hpp"
#include "dla/syntax.hpp"
#include "support/fixtures.hpp"

using namespace dla;

namespace {

Corpus corpus_of(const std::string& text, CorpusLevel level, const CorpusOptions& opts = {}) {
  std::istringstream in(text);
  return parse_corpus(in, level, opts);
}

// Random corpus at any level with a handful of lemmas so targets recur.
Corpus random_corpus(std::mt19937& rng, CorpusLevel level, std::size_t n_sent) {
  const char* lemmas[] = {"dog", "cat", "run", "the", "a", "big", "eat", "quickly"};
  const char* tags[] = {"NN", "VB", "DT", "JJ", "RB"};
  const char* chunks[] = {"B-NP", "I-NP", "B-VP", "I-VP", "O"};
  Corpus c;
  c.level = level;
  c.relations = default_relations();
  for (std::size_t s = 0; s < n_sent; ++s) {
    Sentence sent;
    std::size_t len = 1 + rng() % 9;
    for (std::size_t i = 0; i < len; ++i) {
      Token t{"w", lemmas[rng() % 8], tags[rng() % 5], std::nullopt};
      if (level == CorpusLevel::Chunked) t.chunk_bio = chunks[rng() % 5];
      sent.tokens.push_back(t);
    }
    if (level == CorpusLevel::Parsed)
      for (std::size_t d = 0; d < len; ++d)
        sent.deps.push_back({default_relations()[rng() % 14], rng() % len, rng() % len});
    c.sentences.push_back(std::move(sent));
  }
  return c;
}

}  // namespace

TEST_CASE("each level has 39 feature types") {
  CHECK(tagger_feature_types().size() == 39);
  CHECK(chunker_feature_types().size() == 39);
  CHECK(parser_feature_types().size() == 39);
  for (const auto& types : {tagger_feature_types(), chunker_feature_types(), parser_feature_types()}) {
    std::set<std::string> uniq(types.begin(), types.end());
    CHECK(uniq.size() == 39);
  }
}

TEST_CASE("hand-traced fixture: tagger") {
  auto c = corpus_of(fixture::kTagged, CorpusLevel::Tagged);
  auto ev = extract_features(c, {"dog"});
  CHECK(fixture::events_of(ev, "dog") == fixture::kTaggedDog);
  CHECK(ev.occurrences("dog") == 1);
  auto names = tagger_feature_types();
  std::set<std::string> types(names.begin(), names.end());
  CHECK(ev.ftypes() == types);
}

TEST_CASE("hand-traced fixture: chunker") {
  auto c = corpus_of(fixture::kChunked, CorpusLevel::Chunked);
  auto ev = extract_features(c, {"dog", "the"});
  CHECK(fixture::events_of(ev, "dog") == fixture::kChunkedDog);
  auto the = fixture::events_of(ev, "the");
  CHECK(the.at({"mod_head", "dog"}) == 1);
  CHECK(the.at({"mod_chunk", "NP"}) == 1);
  CHECK_FALSE(the.count({"head_mod_word", "the"}));
}

TEST_CASE("hand-traced fixture: parser") {
  auto c = corpus_of(fixture::kParsed, CorpusLevel::Parsed);
  REQUIRE(c.sentences.size() == 1);
  CHECK(c.sentences[0].deps.size() == 3);
  auto ev = extract_features(c, {"dog"});
  CHECK(fixture::events_of(ev, "dog") == fixture::kParsedDog);
}

TEST_CASE("coordination is symmetric") {
  auto c = corpus_of("cats\tcat\tNNS\nand\tand\tCC\ndogs\tdog\tNNS\n#DEP\tconj\t1\t3\n", CorpusLevel::Parsed);
  auto ev = extract_features(c, {"cat", "dog"});
  CHECK(ev.count("cat", "conj_word", "dog") == 1);
  CHECK(ev.count("dog", "conj_word", "cat") == 1);
  CHECK(ev.count("dog", "conj_pos", "NNS") == 1);
  CHECK(ev.count("dog", "head[conj]", "cat") == 1);
  CHECK(ev.count("cat", "mod[conj]", "dog") == 1);
}

TEST_CASE("single-token sentence gives all-NULL context") {
  auto c = corpus_of("Dogs\tdog\tNNS\n", CorpusLevel::Tagged);
  auto ev = extract_features(c, {"dog"});
  CHECK(ev.count("dog", "pos[0]", "NNS") == 1);
  CHECK(ev.count("dog", "bitag[1,2]", "<NULL>+<NULL>") == 1);
  CHECK(ev.count("dog", "word[4]", "<NULL>") == 1);
}

TEST_CASE("parse errors and limits") {
  CHECK_THROWS_AS(corpus_of("a\tb\n", CorpusLevel::Tagged), ParseError);
  CHECK_THROWS_AS(corpus_of("a\ta\tDT\tX-NP\n", CorpusLevel::Chunked), ParseError);
  CHECK_THROWS_AS(corpus_of("a\ta\tDT\n#DEP\tdobj\t1\t5\n", CorpusLevel::Parsed), ParseError);
  CHECK_THROWS_AS(corpus_of("a\ta\tDT\n#DEP\tdobj\t1\t1\n", CorpusLevel::Tagged), ParseError);
  CHECK_THROWS_AS(corpus_of("#RELATIONS a,b,c\n", CorpusLevel::Parsed), ParseError);
  CHECK(corpus_of("#RELATIONS a,b,c,d,e,f,g,h,i,j,k,l,m,conj\n", CorpusLevel::Parsed).relations.size() == 14);

  auto long_sent = corpus_of("a\ta\tDT\nb\tb\tDT\nc\tc\tDT\n\nd\td\tDT\n", CorpusLevel::Tagged, {2});
  CHECK(long_sent.sentences.size() == 1);
  CHECK(long_sent.skipped == 1);

  auto bad_rel = corpus_of("a\ta\tDT\nb\tb\tNN\n#DEP\tnsubj\t2\t1\n", CorpusLevel::Parsed);
  CHECK_THROWS_AS(extract_features(bad_rel, {"a"}), Error);
  CHECK_THROWS_AS(extract_features(corpus_of(fixture::kParsed, CorpusLevel::Parsed), {"dog"}, "coord"), Error);
}

TEST_CASE("raw count never exceeds occurrences") {
  std::mt19937 rng(21);
  for (auto level : {CorpusLevel::Tagged, CorpusLevel::Chunked, CorpusLevel::Parsed}) {
    auto c = random_corpus(rng, level, 200);
    auto ev = extract_features(c, {"dog", "cat", "the"});
    for (const auto& [lex, counts] : ev.by_lexeme())
      for (const auto& [key, n] : counts) CHECK(n <= ev.occurrences(lex));
  }
}

TEST_CASE("parallel extraction equals the serial reference") {
  std::mt19937 rng(99);
  for (auto level : {CorpusLevel::Tagged, CorpusLevel::Chunked, CorpusLevel::Parsed}) {
    auto c = random_corpus(rng, level, 500);
    std::set<std::string> targets = {"dog", "run", "big", "quickly"};
    auto serial = extract_features_serial(c, targets);
    const int saved = max_threads();
    for (int threads : {1, 2, 4}) {
      set_threads(threads);
      CHECK(extract_features(c, targets) == serial);
    }
    set_threads(saved);
  }
}
