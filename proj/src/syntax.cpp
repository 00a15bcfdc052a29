#include "dla/syntax.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <utility>

#include "dla/common.hpp"
#include "dla/parallel.hpp"

namespace dla {

std::string_view level_name(CorpusLevel level) {
  switch (level) {
    case CorpusLevel::Tagged: return "tagged";
    case CorpusLevel::Chunked: return "chunked";
    case CorpusLevel::Parsed: return "parsed";
  }
  return "?";
}

const std::vector<std::string>& default_relations() {
  static const std::vector<std::string> kRelations = {
      "ncsubj", "dobj", "obj2", "iobj", "xcomp", "ccomp", "ncmod",
      "xmod",   "cmod", "detmod", "aux", "conj",  "arg_mod", "subj"};
  return kRelations;
}

// ----------------------------------------------------------------- parsing

namespace {

struct PendingDep {
  Dependency dep;
  std::size_t line;
  long long head1, dep1;
};

std::vector<std::string> parse_relations(std::string_view spec, std::size_t lineno) {
  std::vector<std::string> rels;
  for (auto r : split(spec, ',')) {
    auto t = trim(r);
    if (t.empty()) throw ParseError("empty relation label in #RELATIONS", lineno);
    rels.emplace_back(t);
  }
  auto sorted = rels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError("duplicate relation label in #RELATIONS", lineno);
  if (rels.size() != kRelationCount)
    throw ParseError("#RELATIONS must declare exactly " + std::to_string(kRelationCount) + " labels, got " +
                         std::to_string(rels.size()),
                     lineno);
  return rels;
}

bool valid_bio(std::string_view tag) {
  return tag == "O" || ((tag.starts_with("B-") || tag.starts_with("I-")) && tag.size() > 2);
}

}  // namespace

Corpus parse_corpus(std::istream& in, CorpusLevel level, const CorpusOptions& opts) {
  Corpus corpus;
  corpus.level = level;
  corpus.relations = default_relations();
  const std::size_t columns = level == CorpusLevel::Chunked ? 4 : 3;

  Sentence cur;
  std::vector<PendingDep> pending;
  auto flush = [&] {
    if (cur.tokens.empty()) {
      if (!pending.empty()) throw ParseError("dependency lines without tokens", pending.front().line);
      return;
    }
    if (cur.tokens.size() > opts.max_sentence_length) {
      ++corpus.skipped;
    } else {
      const auto n = static_cast<long long>(cur.tokens.size());
      for (auto& p : pending) {
        if (p.head1 < 1 || p.head1 > n || p.dep1 < 1 || p.dep1 > n)
          throw ParseError("dependency index out of range (sentence has " + std::to_string(n) + " tokens)",
                           p.line);
        p.dep.head = static_cast<std::size_t>(p.head1 - 1);
        p.dep.dep = static_cast<std::size_t>(p.dep1 - 1);
        cur.deps.push_back(std::move(p.dep));
      }
      corpus.sentences.push_back(std::move(cur));
    }
    cur = Sentence{};
    pending.clear();
  };

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = chomp(raw);
    if (trim(line).empty()) {
      flush();
      continue;
    }
    if (line.starts_with("#RELATIONS")) {
      corpus.relations = parse_relations(trim(line.substr(10)), lineno);
      continue;
    }
    auto fields = split(line, '\t');
    if (fields[0] == "#DEP") {
      if (level != CorpusLevel::Parsed) throw ParseError("#DEP line in a non-parsed corpus", lineno);
      if (fields.size() != 4) throw ParseError("#DEP line needs relation, head and dependent", lineno);
      try {
        pending.push_back({Dependency{std::string(fields[1]), 0, 0}, lineno, parse_int(fields[2]),
                           parse_int(fields[3])});
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno);
      }
      continue;
    }
    if (fields.size() != columns)
      throw ParseError("expected " + std::to_string(columns) + " columns for " + std::string(level_name(level)) +
                           " corpus, got " + std::to_string(fields.size()),
                       lineno);
    if (!pending.empty()) throw ParseError("token line after dependency lines in the same sentence", lineno);
    Token tok{std::string(fields[0]), to_lower(fields[1]), std::string(fields[2]), std::nullopt};
    if (tok.lemma.empty() || tok.pos.empty()) throw ParseError("empty lemma or POS", lineno);
    if (columns == 4) {
      if (!valid_bio(fields[3])) throw ParseError("bad chunk tag '" + std::string(fields[3]) + "'", lineno);
      tok.chunk_bio = std::string(fields[3]);
    }
    cur.tokens.push_back(std::move(tok));
  }
  flush();
  return corpus;
}

Corpus parse_corpus_file(const std::string& path, CorpusLevel level, const CorpusOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus '" + path + "'");
  return parse_corpus(in, level, opts);
}

// ---------------------------------------------------------- feature inventory

namespace {

using Pair = std::pair<int, int>;

const std::vector<int> kTagPos = {-4, -3, -2, -1, 0, 1, 2, 3, 4};
const std::vector<int> kTagWord = {-4, -3, -2, -1, 1, 2, 3, 4};
const std::vector<Pair> kTagBitag = {{-4, -1}, {-4, 0}, {-3, -2}, {-3, -1}, {-3, 0}, {-2, -1}, {-2, 0}, {-1, 0},
                                     {0, 1},   {0, 2},  {0, 3},   {0, 4},   {1, 2},  {1, 3},   {1, 4},  {2, 3}};
const std::vector<Pair> kTagBiword = {{-3, -2}, {-3, -1}, {-2, -1}, {1, 2}, {1, 3}, {2, 3}};

const std::vector<int> kChunkPos = {-3, -2, -1, 0, 1, 2, 3};
const std::vector<int> kChunkWord = {-3, -2, -1, 1, 2, 3};
const std::vector<int> kChunkChunk = {-4, -3, -2, -1, 0, 1, 2, 3, 4};
const std::vector<int> kChunkHead = {-3, -2, -1, 1, 2, 3};
const std::vector<Pair> kChunkBichunk = {{-2, -1}, {-2, 0}, {-1, 0}, {0, 1}, {0, 2}, {1, 2}};

const std::vector<int> kParsePos = {-2, -1, 0, 1, 2};
const std::vector<int> kParseWord = {-2, -1, 1, 2};

std::string at(std::string_view name, int p) { return std::string(name) + "[" + std::to_string(p) + "]"; }
std::string at(std::string_view name, Pair p) {
  return std::string(name) + "[" + std::to_string(p.first) + "," + std::to_string(p.second) + "]";
}

}  // namespace

std::vector<std::string> tagger_feature_types() {
  std::vector<std::string> out;
  for (int p : kTagPos) out.push_back(at("pos", p));
  for (int p : kTagWord) out.push_back(at("word", p));
  for (auto p : kTagBitag) out.push_back(at("bitag", p));
  for (auto p : kTagBiword) out.push_back(at("biword", p));
  return out;
}

std::vector<std::string> chunker_feature_types() {
  std::vector<std::string> out = {"mod_head", "mod_chunk", "head_mod_word", "head_mod_pos", "head_mod_wordpos"};
  for (int p : kChunkPos) out.push_back(at("pos", p));
  for (int p : kChunkWord) out.push_back(at("word", p));
  for (int p : kChunkChunk) out.push_back(at("chunk", p));
  for (int p : kChunkHead) out.push_back(at("chunkhead", p));
  for (auto p : kChunkBichunk) out.push_back(at("bichunk", p));
  return out;
}

std::vector<std::string> parser_feature_types(const std::vector<std::string>& relations) {
  std::vector<std::string> out;
  for (int p : kParsePos) out.push_back(at("pos", p));
  for (int p : kParseWord) out.push_back(at("word", p));
  out.push_back("conj_word");
  out.push_back("conj_pos");
  for (const auto& r : relations) out.push_back("head[" + r + "]");
  for (const auto& r : relations) out.push_back("mod[" + r + "]");
  return out;
}

// ---------------------------------------------------------------- extraction

namespace {

/// Collects one occurrence's features with per-occurrence de-duplication.
class Occurrence {
 public:
  void emit(std::string ftype, std::string instance) { keys_.insert({std::move(ftype), std::move(instance)}); }
  void commit(EventCounts& ev, const std::string& lexeme) {
    ev.add_occurrence(lexeme);
    for (const auto& k : keys_) ev.add(lexeme, k.ftype, k.instance);
    keys_.clear();
  }

 private:
  std::set<FeatureKey> keys_;
};

std::string join(std::string_view a, std::string_view b) {
  std::string s(a);
  s += '+';
  s += b;
  return s;
}

template <typename Get>
std::string field_at(const std::vector<Token>& toks, std::size_t i, int off, Get get) {
  auto j = static_cast<long long>(i) + off;
  if (j < 0 || j >= static_cast<long long>(toks.size())) return std::string(kNull);
  return get(toks[static_cast<std::size_t>(j)]);
}

const auto kPosOf = [](const Token& t) { return t.pos; };
const auto kLemmaOf = [](const Token& t) { return t.lemma; };

void tagger_sentence(const Sentence& s, const std::set<std::string>& targets, EventCounts& ev) {
  const auto& toks = s.tokens;
  Occurrence occ;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (!targets.count(toks[i].lemma)) continue;
    for (int p : kTagPos) occ.emit(at("pos", p), field_at(toks, i, p, kPosOf));
    for (int p : kTagWord) occ.emit(at("word", p), field_at(toks, i, p, kLemmaOf));
    for (auto p : kTagBitag)
      occ.emit(at("bitag", p), join(field_at(toks, i, p.first, kPosOf), field_at(toks, i, p.second, kPosOf)));
    for (auto p : kTagBiword)
      occ.emit(at("biword", p),
               join(field_at(toks, i, p.first, kLemmaOf), field_at(toks, i, p.second, kLemmaOf)));
    occ.commit(ev, toks[i].lemma);
  }
}

struct Chunk {
  std::string type;       // "O" for tokens outside any chunk
  std::size_t begin = 0;  // token range [begin, end)
  std::size_t end = 0;
  bool real = false;
  std::size_t head() const { return end - 1; }
};

std::vector<Chunk> segment(const std::vector<Token>& toks, std::vector<std::size_t>& chunk_of) {
  std::vector<Chunk> chunks;
  chunk_of.assign(toks.size(), 0);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const std::string tag = toks[i].chunk_bio.value_or("O");
    if (tag == "O") {
      chunks.push_back({"O", i, i + 1, false});
    } else {
      std::string type = tag.substr(2);
      bool cont = tag[0] == 'I' && !chunks.empty() && chunks.back().real && chunks.back().type == type &&
                  chunks.back().end == i;
      if (cont)
        chunks.back().end = i + 1;
      else
        chunks.push_back({type, i, i + 1, true});
    }
    chunk_of[i] = chunks.size() - 1;
  }
  return chunks;
}

void chunker_sentence(const Sentence& s, const std::set<std::string>& targets, EventCounts& ev) {
  const auto& toks = s.tokens;
  std::vector<std::size_t> chunk_of;
  auto chunks = segment(toks, chunk_of);
  auto chunk_field = [&](std::size_t ci, int off, bool head) -> std::string {
    auto j = static_cast<long long>(ci) + off;
    if (j < 0 || j >= static_cast<long long>(chunks.size())) return std::string(kNull);
    const auto& c = chunks[static_cast<std::size_t>(j)];
    return head ? toks[c.head()].lemma : c.type;
  };

  Occurrence occ;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (!targets.count(toks[i].lemma)) continue;
    const std::size_t ci = chunk_of[i];
    const auto& c = chunks[ci];
    if (c.real && c.end - c.begin > 1) {
      if (i == c.head()) {
        for (std::size_t m = c.begin; m < c.head(); ++m) {
          occ.emit("head_mod_word", toks[m].lemma);
          occ.emit("head_mod_pos", toks[m].pos);
          occ.emit("head_mod_wordpos", toks[m].lemma + "/" + toks[m].pos);
        }
      } else {
        occ.emit("mod_head", toks[c.head()].lemma);
        occ.emit("mod_chunk", c.type);
      }
    }
    for (int p : kChunkPos) occ.emit(at("pos", p), field_at(toks, i, p, kPosOf));
    for (int p : kChunkWord) occ.emit(at("word", p), field_at(toks, i, p, kLemmaOf));
    for (int p : kChunkChunk) occ.emit(at("chunk", p), chunk_field(ci, p, false));
    for (int p : kChunkHead) occ.emit(at("chunkhead", p), chunk_field(ci, p, true));
    for (auto p : kChunkBichunk)
      occ.emit(at("bichunk", p), join(chunk_field(ci, p.first, false), chunk_field(ci, p.second, false)));
    occ.commit(ev, toks[i].lemma);
  }
}

void parser_sentence(const Sentence& s, const std::set<std::string>& targets, const ExtractOptions& opts,
                     EventCounts& ev) {
  const auto& toks = s.tokens;
  for (const auto& d : s.deps)
    if (std::find(opts.relations.begin(), opts.relations.end(), d.relation) == opts.relations.end())
      throw Error("relation '" + d.relation + "' is not in the declared inventory");

  Occurrence occ;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (!targets.count(toks[i].lemma)) continue;
    for (int p : kParsePos) occ.emit(at("pos", p), field_at(toks, i, p, kPosOf));
    for (int p : kParseWord) occ.emit(at("word", p), field_at(toks, i, p, kLemmaOf));
    for (const auto& d : s.deps) {
      if (d.relation == opts.coordination && (d.head == i || d.dep == i) && d.head != d.dep) {
        const auto& partner = toks[d.head == i ? d.dep : d.head];
        occ.emit("conj_word", partner.lemma);
        occ.emit("conj_pos", partner.pos);
      }
      if (d.dep == i) occ.emit("head[" + d.relation + "]", toks[d.head].lemma);
      if (d.head == i) occ.emit("mod[" + d.relation + "]", toks[d.dep].lemma);
    }
    occ.commit(ev, toks[i].lemma);
  }
}

using SentenceFn = std::function<void(const Sentence&, EventCounts&)>;

EventCounts fold_parallel(const std::vector<Sentence>& sentences, const SentenceFn& fn) {
  const int nthreads = max_threads();
  std::vector<EventCounts> shards(static_cast<std::size_t>(nthreads));
  const auto n = static_cast<std::int64_t>(sentences.size());
  std::exception_ptr failure;
#pragma omp parallel num_threads(nthreads)
  {
    auto& mine = shards[static_cast<std::size_t>(thread_id())];
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        fn(sentences[i], mine);
      } catch (...) {
#pragma omp critical(dla_extract_error)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  EventCounts out;
  for (const auto& s : shards) out.merge(s);
  return out;
}

EventCounts fold_serial(const std::vector<Sentence>& sentences, const SentenceFn& fn) {
  EventCounts out;
  for (const auto& s : sentences) fn(s, out);
  return out;
}

void check_coordination(const ExtractOptions& opts) {
  if (std::find(opts.relations.begin(), opts.relations.end(), opts.coordination) == opts.relations.end())
    throw Error("coordination label '" + opts.coordination + "' is not in the relation inventory");
}

SentenceFn sentence_fn(const Corpus& corpus, const std::set<std::string>& targets, const ExtractOptions& opts) {
  switch (corpus.level) {
    case CorpusLevel::Tagged:
      return [&targets](const Sentence& s, EventCounts& ev) { tagger_sentence(s, targets, ev); };
    case CorpusLevel::Chunked:
      return [&targets](const Sentence& s, EventCounts& ev) { chunker_sentence(s, targets, ev); };
    case CorpusLevel::Parsed:
      return [&targets, opts](const Sentence& s, EventCounts& ev) { parser_sentence(s, targets, opts, ev); };
  }
  throw Error("unknown corpus level");
}

}  // namespace

EventCounts extract_tagger_features(const std::vector<Sentence>& sentences, const std::set<std::string>& targets) {
  if (targets.empty()) return {};
  return fold_parallel(sentences, [&](const Sentence& s, EventCounts& ev) { tagger_sentence(s, targets, ev); });
}

EventCounts extract_chunker_features(const std::vector<Sentence>& sentences, const std::set<std::string>& targets) {
  if (targets.empty()) return {};
  return fold_parallel(sentences, [&](const Sentence& s, EventCounts& ev) { chunker_sentence(s, targets, ev); });
}

EventCounts extract_parser_features(const std::vector<Sentence>& sentences, const std::set<std::string>& targets,
                                    const ExtractOptions& opts) {
  check_coordination(opts);
  if (opts.relations.size() != kRelationCount)
    throw Error("relation inventory must hold exactly " + std::to_string(kRelationCount) + " labels");
  if (targets.empty()) return {};
  return fold_parallel(sentences,
                       [&](const Sentence& s, EventCounts& ev) { parser_sentence(s, targets, opts, ev); });
}

EventCounts extract_features(const Corpus& corpus, const std::set<std::string>& targets,
                             const std::string& coordination) {
  switch (corpus.level) {
    case CorpusLevel::Tagged: return extract_tagger_features(corpus.sentences, targets);
    case CorpusLevel::Chunked: return extract_chunker_features(corpus.sentences, targets);
    case CorpusLevel::Parsed: return extract_parser_features(corpus.sentences, targets, {corpus.relations, coordination});
  }
  throw Error("unknown corpus level");
}

EventCounts extract_features_serial(const Corpus& corpus, const std::set<std::string>& targets,
                                    const std::string& coordination) {
  ExtractOptions opts{corpus.relations, coordination};
  if (corpus.level == CorpusLevel::Parsed) check_coordination(opts);
  return fold_serial(corpus.sentences, sentence_fn(corpus, targets, opts));
}

}  // namespace dla
