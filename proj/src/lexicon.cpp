#include "dla/lexicon.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "dla/common.hpp"

namespace dla {

std::string_view tag(WordClass wc) {
  switch (wc) {
    case WordClass::Noun: return "noun";
    case WordClass::Verb: return "verb";
    case WordClass::Adjective: return "adj";
    case WordClass::Adverb: return "adv";
  }
  return "?";
}

std::string_view short_label(WordClass wc) {
  switch (wc) {
    case WordClass::Noun: return "N";
    case WordClass::Verb: return "V";
    case WordClass::Adjective: return "Adj";
    case WordClass::Adverb: return "Adv";
  }
  return "?";
}

std::optional<WordClass> try_parse_word_class(std::string_view t) {
  if (t == "noun") return WordClass::Noun;
  if (t == "verb") return WordClass::Verb;
  if (t == "adj") return WordClass::Adjective;
  if (t == "adv") return WordClass::Adverb;
  return std::nullopt;
}

WordClass parse_word_class(std::string_view t) {
  if (auto wc = try_parse_word_class(t)) return *wc;
  throw ParseError("unknown word class '" + std::string(t) + "'");
}

bool SeedLexicon::add(std::string_view lexeme, const LexicalType& type) {
  if (lexeme.empty()) throw Error("empty lexeme");
  if (has_space(lexeme)) throw Error("multiword lexeme '" + std::string(lexeme) + "' rejected");
  if (type.name.empty()) throw Error("empty lexical type name");
  if (auto it = inventory_.find(type.name); it != inventory_.end()) {
    if (it->second.word_class != type.word_class)
      throw Error("lexical type '" + type.name + "' declared under two word classes");
  } else {
    inventory_.emplace(type.name, type);
  }
  LexicalEntry e{to_lower(lexeme), type};
  word_classes_[e.lexeme].insert(type.word_class);
  if (!entries_.insert(std::move(e)).second) {
    ++duplicates_;
    return false;
  }
  return true;
}

const WordClassSet& SeedLexicon::word_classes(const std::string& lexeme) const {
  static const WordClassSet kEmpty;
  auto it = word_classes_.find(lexeme);
  return it == word_classes_.end() ? kEmpty : it->second;
}

std::vector<std::string> SeedLexicon::lexemes() const {
  std::vector<std::string> out;
  out.reserve(word_classes_.size());
  for (const auto& [lex, _] : word_classes_) out.push_back(lex);
  return out;
}

std::vector<LexicalEntry> SeedLexicon::entries_of(const std::string& lexeme) const {
  std::vector<LexicalEntry> out;
  for (auto it = entries_.lower_bound(LexicalEntry{lexeme, {}});
       it != entries_.end() && it->lexeme == lexeme; ++it)
    out.push_back(*it);
  return out;
}

std::map<std::string, std::size_t> SeedLexicon::type_counts() const {
  std::map<std::string, std::size_t> counts;
  for (const auto& e : entries_) ++counts[e.type.name];
  return counts;
}

SeedLexicon SeedLexicon::restrict_types(const std::set<LexicalType>& keep) const {
  SeedLexicon out;
  for (const auto& e : entries_)
    if (keep.count(e.type)) out.add(e.lexeme, e.type);
  return out;
}

SeedLexicon SeedLexicon::restrict_lexemes(const std::set<std::string>& keep) const {
  SeedLexicon out;
  for (const auto& e : entries_)
    if (keep.count(e.lexeme)) out.add(e.lexeme, e.type);
  return out;
}

SeedLexicon load_seed_lexicon(std::istream& in) {
  SeedLexicon lex;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = chomp(raw);
    if (trim(line).empty() || line.front() == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 3)
      throw ParseError("malformed lexicon line: expected 3 tab-separated fields, got " +
                           std::to_string(fields.size()),
                       lineno);
    auto wc = try_parse_word_class(fields[1]);
    if (!wc) throw ParseError("unknown word class '" + std::string(fields[1]) + "'", lineno);
    try {
      lex.add(trim(fields[0]), LexicalType{std::string(trim(fields[2])), *wc});
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return lex;
}

SeedLexicon load_seed_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon '" + path + "'");
  return load_seed_lexicon(in);
}

void write_entries(const EntrySet& entries, std::ostream& out) {
  for (const auto& e : entries)
    out << e.lexeme << '\t' << tag(e.type.word_class) << '\t' << e.type.name << '\n';
}

void serialize(const SeedLexicon& lexicon, std::ostream& out) { write_entries(lexicon.entries(), out); }

std::set<LexicalType> filter_inventory(const SeedLexicon& lexicon, std::size_t min_entries) {
  if (min_entries < 1) throw Error("min_entries must be at least 1");
  std::set<LexicalType> out;
  auto counts = lexicon.type_counts();
  for (const auto& [name, type] : lexicon.inventory())
    if (counts[name] >= min_entries) out.insert(type);
  return out;
}

LexicalType majority_default(WordClass wc, const SeedLexicon& lexicon) {
  const LexicalType* best = nullptr;
  std::size_t best_count = 0;
  auto counts = lexicon.type_counts();
  // inventory is name-ordered, so strict '>' keeps the smallest name on ties
  for (const auto& [name, type] : lexicon.inventory()) {
    if (type.word_class != wc) continue;
    std::size_t c = counts[name];
    if (c > 0 && (!best || c > best_count)) {
      best = &type;
      best_count = c;
    }
  }
  if (!best) throw Error("no entries of word class '" + std::string(tag(wc)) + "' in lexicon");
  return *best;
}

const DefaultMap& erg_baseline_defaults() {
  static const DefaultMap kDefaults = {
      {WordClass::Noun, {"n_intr_le", WordClass::Noun}},
      {WordClass::Verb, {"v_np_trans_le", WordClass::Verb}},
      {WordClass::Adjective, {"adj_intrans_le", WordClass::Adjective}},
      {WordClass::Adverb, {"adv_int_vp_le", WordClass::Adverb}},
  };
  return kDefaults;
}

DefaultMap majority_defaults(const SeedLexicon& lexicon) {
  DefaultMap out;
  for (auto wc : kWordClasses) {
    bool present = false;
    for (const auto& [_, t] : lexicon.inventory()) present = present || t.word_class == wc;
    out[wc] = present ? majority_default(wc, lexicon) : erg_baseline_defaults().at(wc);
  }
  return out;
}

}  // namespace dla
