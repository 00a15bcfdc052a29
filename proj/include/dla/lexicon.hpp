#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dla {

enum class WordClass { Noun, Verb, Adjective, Adverb };

inline constexpr std::array<WordClass, 4> kWordClasses = {WordClass::Noun, WordClass::Verb,
                                                          WordClass::Adjective, WordClass::Adverb};

/// "noun", "verb", "adj", "adv" (the file tags).
std::string_view tag(WordClass wc);
/// "N", "V", "Adj", "Adv" (used in rendered transformations and reports).
std::string_view short_label(WordClass wc);
/// Parses a file tag; throws ParseError for anything outside the four classes.
WordClass parse_word_class(std::string_view tag);
std::optional<WordClass> try_parse_word_class(std::string_view tag);

struct LexicalType {
  std::string name;
  WordClass word_class = WordClass::Noun;

  friend bool operator==(const LexicalType&, const LexicalType&) = default;
  friend auto operator<=>(const LexicalType& a, const LexicalType& b) { return a.name <=> b.name; }
};

struct LexicalEntry {
  std::string lexeme;
  LexicalType type;

  friend bool operator==(const LexicalEntry&, const LexicalEntry&) = default;
  friend auto operator<=>(const LexicalEntry& a, const LexicalEntry& b) {
    if (auto c = a.lexeme <=> b.lexeme; c != 0) return c;
    return a.type.name <=> b.type.name;
  }
};

using EntrySet = std::set<LexicalEntry>;
using WordClassSet = std::set<WordClass>;

/// Gold lexicon: lexeme -> lexical types, plus the type inventory.
/// Immutable once built; `add` is only used while constructing.
class SeedLexicon {
 public:
  /// Adds an entry. Lowercases the lexeme. Returns false for an exact duplicate.
  /// Throws on an empty or multiword lexeme, or a type seen under another class.
  bool add(std::string_view lexeme, const LexicalType& type);

  const EntrySet& entries() const { return entries_; }
  const std::map<std::string, LexicalType>& inventory() const { return inventory_; }
  const std::map<std::string, WordClassSet>& word_classes() const { return word_classes_; }
  const WordClassSet& word_classes(const std::string& lexeme) const;

  std::vector<std::string> lexemes() const;
  std::vector<LexicalEntry> entries_of(const std::string& lexeme) const;
  bool contains(const std::string& lexeme) const { return word_classes_.count(lexeme) > 0; }

  /// Entry count per lexical type name.
  std::map<std::string, std::size_t> type_counts() const;

  /// Sub-lexicon with only the given types (lexemes left without entries vanish).
  SeedLexicon restrict_types(const std::set<LexicalType>& keep) const;
  /// Sub-lexicon with only the given lexemes.
  SeedLexicon restrict_lexemes(const std::set<std::string>& keep) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t duplicates_collapsed() const { return duplicates_; }

 private:
  EntrySet entries_;
  std::map<std::string, LexicalType> inventory_;
  std::map<std::string, WordClassSet> word_classes_;
  std::size_t duplicates_ = 0;
};

/// Reads `lexeme<TAB>class<TAB>type` lines; `#` lines and blank lines are skipped.
SeedLexicon load_seed_lexicon(std::istream& in);
SeedLexicon load_seed_lexicon_file(const std::string& path);
void serialize(const SeedLexicon& lexicon, std::ostream& out);
void write_entries(const EntrySet& entries, std::ostream& out);

/// Types with at least `min_entries` entries.
std::set<LexicalType> filter_inventory(const SeedLexicon& lexicon, std::size_t min_entries);

/// Most populous type of `wc`; ties go to the lexicographically smallest name.
LexicalType majority_default(WordClass wc, const SeedLexicon& lexicon);

using DefaultMap = std::map<WordClass, LexicalType>;

/// Majority defaults for every class, using the ERG baseline types for classes
/// the lexicon does not cover.
DefaultMap majority_defaults(const SeedLexicon& lexicon);
const DefaultMap& erg_baseline_defaults();

}  // namespace dla
