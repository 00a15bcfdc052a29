#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dla {

/// One feature instance: a feature type plus a concrete value of it.
struct FeatureKey {
  std::string ftype;
  std::string instance;

  friend bool operator==(const FeatureKey&, const FeatureKey&) = default;
  friend auto operator<=>(const FeatureKey&, const FeatureKey&) = default;
};

struct FeatureEvent {
  std::string lexeme;
  std::string ftype;
  std::string instance;

  friend bool operator==(const FeatureEvent&, const FeatureEvent&) = default;
  friend auto operator<=>(const FeatureEvent&, const FeatureEvent&) = default;
};

/// Multiset of feature events plus the number of token occurrences seen per
/// lexeme. Merging two tables sums both, so shards can be folded in any order.
class EventCounts {
 public:
  using InstanceCounts = std::map<FeatureKey, std::uint64_t>;

  void add(std::string_view lexeme, std::string_view ftype, std::string_view instance,
           std::uint64_t n = 1);
  void add_occurrence(std::string_view lexeme, std::uint64_t n = 1);
  void merge(const EventCounts& other);

  const std::map<std::string, InstanceCounts, std::less<>>& by_lexeme() const { return counts_; }
  const std::map<std::string, std::uint64_t, std::less<>>& occurrences() const { return occurrences_; }

  std::uint64_t count(std::string_view lexeme, std::string_view ftype, std::string_view instance) const;
  std::uint64_t occurrences(std::string_view lexeme) const;
  /// Total number of events (with multiplicity).
  std::uint64_t total() const;
  std::set<std::string> ftypes() const;
  /// Flattened multiset view, sorted.
  std::map<FeatureEvent, std::uint64_t> as_multiset() const;

  friend bool operator==(const EventCounts&, const EventCounts&) = default;

 private:
  std::map<std::string, InstanceCounts, std::less<>> counts_;
  std::map<std::string, std::uint64_t, std::less<>> occurrences_;
};

using FeatureId = std::uint32_t;

/// Inventory of selected feature instances with dense ids 0..n-1.
/// Ids follow (ftype, instance) order, so identical selections give identical ids.
class FeatureSpace {
 public:
  FeatureSpace() = default;
  FeatureSpace(std::vector<FeatureKey> instances, std::size_t per_type_cap, std::size_t total_cap);

  std::size_t size() const { return instances_.size(); }
  bool empty() const { return instances_.empty(); }
  const FeatureKey& at(FeatureId id) const { return instances_.at(id); }
  const std::vector<FeatureKey>& instances() const { return instances_; }
  std::optional<FeatureId> id(const FeatureKey& key) const;
  std::size_t per_type_cap() const { return per_type_cap_; }
  std::size_t total_cap() const { return total_cap_; }
  std::map<std::string, std::size_t> per_type_counts() const;
  /// Content fingerprint over the ordered instance list.
  std::string fingerprint() const;

 private:
  std::vector<FeatureKey> instances_;
  std::map<FeatureKey, FeatureId> index_;
  std::size_t per_type_cap_ = 50;
  std::size_t total_cap_ = 3900;
};

struct FeatureValue {
  std::uint64_t raw = 0;
  double rel = 0.0;

  friend bool operator==(const FeatureValue&, const FeatureValue&) = default;
};

/// Per-lexeme signature. Absent ids are zero.
struct SparseVector {
  std::string lexeme;
  std::map<FeatureId, FeatureValue> values;
  std::uint64_t occurrences = 0;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

/// Each feature instance contributes two value dimensions: raw count and
/// relative occurrence. Dimension ids interleave them: 2*id (raw), 2*id+1 (rel).
using DimId = std::uint32_t;
enum class ValueKind : std::uint32_t { Raw = 0, Rel = 1 };

constexpr DimId dim_of(FeatureId id, ValueKind kind) { return 2 * id + static_cast<DimId>(kind); }
constexpr FeatureId feature_of(DimId d) { return d / 2; }
constexpr ValueKind kind_of(DimId d) { return static_cast<ValueKind>(d % 2); }

/// Value of one dimension in a sparse vector (0 when absent).
double dim_value(const SparseVector& v, DimId d);

struct FeatureRanking {
  std::vector<DimId> order;         // best first
  std::map<DimId, double> scores;   // gain ratio per dimension
};

/// Saturation-based capping: per type keep the `per_type_cap` instances that fire
/// for the most lexicon lexemes (ties: higher total count, then instance name),
/// then truncate globally to `total_cap` by the same ordering.
FeatureSpace select_instances(const EventCounts& events, const std::set<std::string>& lexicon_lexemes,
                              std::size_t per_type_cap = 50, std::size_t total_cap = 3900);

/// Projects events onto `space`. Throws when a lexeme has events but no occurrences.
std::map<std::string, SparseVector> vectorize(const EventCounts& events, const FeatureSpace& space);

/// Gain ratio of a binary feature (present / absent) against a binary label.
/// `n` total items, `n_pos` positives, `n_on` items with the feature, `n_on_pos`
/// positives with the feature. Zero split information scores 0.
double gain_ratio(std::size_t n, std::size_t n_pos, std::size_t n_on, std::size_t n_on_pos);

/// Ranks every dimension that is non-zero somewhere in `vectors` by gain ratio.
/// Throws when the labels are all one class or fewer than two vectors are given.
FeatureRanking rank_features(const std::vector<const SparseVector*>& vectors,
                             const std::vector<bool>& labels);
FeatureRanking rank_features(const std::vector<SparseVector>& vectors,
                             const std::map<std::string, bool>& labels);

std::vector<DimId> take_top(const FeatureRanking& ranking, std::size_t n = 100);

/// Sparse matrix text format: `#FEATURE id<TAB>ftype<TAB>instance` header lines,
/// then `lexeme<TAB>id:raw:rel ...` data lines, ordered by id.
struct SparseMatrix {
  FeatureSpace space;
  std::map<std::string, SparseVector> vectors;
};

void write_matrix(const SparseMatrix& m, std::ostream& out);
SparseMatrix read_matrix(std::istream& in);

}  // namespace dla
