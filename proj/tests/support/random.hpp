#pragma once
// Seeded generators for property tests.

#include <random>
#include <string>
#include <vector>

#include "dla/featurespace.hpp"

namespace gen {

/// Random sparse vector over feature ids [0, n_features): each feature fires with
/// probability `density`, raw in 1..max_raw, rel = raw / occurrences.
inline dla::SparseVector sparse_vector(std::mt19937_64& rng, const std::string& lexeme, std::uint32_t n_features,
                                       double density = 0.3, std::uint64_t max_raw = 5) {
  dla::SparseVector v;
  v.lexeme = lexeme;
  v.occurrences = max_raw + rng() % 4;
  std::bernoulli_distribution fire(density);
  for (std::uint32_t f = 0; f < n_features; ++f) {
    if (!fire(rng)) continue;
    std::uint64_t raw = 1 + rng() % max_raw;
    v.values[f] = {raw, static_cast<double>(raw) / static_cast<double>(v.occurrences)};
  }
  return v;
}

inline std::vector<dla::SparseVector> sparse_vectors(std::mt19937_64& rng, std::size_t n, std::uint32_t n_features,
                                                     double density = 0.3) {
  std::vector<dla::SparseVector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(sparse_vector(rng, "x" + std::to_string(i), n_features, density));
  return out;
}

inline std::vector<const dla::SparseVector*> pointers(const std::vector<dla::SparseVector>& vs) {
  std::vector<const dla::SparseVector*> out;
  for (const auto& v : vs) out.push_back(&v);
  return out;
}

}  // namespace gen
