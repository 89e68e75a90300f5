#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zpart/instance.hpp"

namespace zpart {

/// Largest zero count conjectured for n elements: C(n, n/2) for even n
/// (the all-ones vector) and the count of (1, ..., 1, 2) for odd n, which
/// is 2 C(n-1, (n-3)/2) for n >= 3 and 0 for n = 1.
Count conjectured_bound(unsigned n);

// The vector conjectured to attain the bound.
PartitionInstance extremal_vector(unsigned n);

struct Counterexample {
  PartitionInstance instance;
  Count count;
  Count bound;
};

struct ScanSlice {
  unsigned n = 0;
  std::uint64_t instances = 0;
  Count bound;
  Count max_count;
  std::optional<PartitionInstance> witness;  // first vector attaining max_count
};

struct ScanReport {
  unsigned n_min = 0;
  unsigned n_max = 0;
  std::uint64_t element_bound = 0;
  std::uint64_t instances_checked = 0;
  std::uint64_t quadrature_crosschecks = 0;
  mpq_class max_ratio;  // max over checked vectors of count / conjectured bound
  std::optional<PartitionInstance> witness;
  std::vector<Counterexample> counterexamples;
  std::vector<ScanSlice> slices;  // one per n
  bool partial = false;           // stopped at the instance budget
};

/// Every nondecreasing vector of length n in [n_min, n_max] with entries in
/// [1, element_bound] and gcd 1. Permutation and common scaling leave the zero
/// count unchanged, so this covers the whole box.
ScanReport scan_exhaustive(unsigned n_min, unsigned n_max, std::uint64_t element_bound,
                           std::uint64_t budget = 50'000'000);

// `samples` uniform vectors from a seeded mt19937_64; identical seeds give identical reports.
ScanReport scan_random(unsigned n, std::uint64_t element_bound, std::uint64_t samples, std::uint64_t seed);

// Folds `from` into `into`: counts add, max_ratio takes the max (earlier witness wins ties),
// counterexamples and slices concatenate.
void merge_into(ScanReport& into, const ScanReport& from);

}  // namespace zpart
