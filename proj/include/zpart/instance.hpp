#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zpart {

// Partition counts reach 2^n, so every count is arbitrary precision.
using Count = mpz_class;

// Resource guards shared by the counters. Every limit is overridable per call.
struct Limits {
  unsigned oracle_max_n = 30;
  std::uint64_t dp_max_total = 1'000'000;
  std::uint64_t residue_max_modulus = 10'000'000;
  std::uint64_t modular_max_bits = 100'000'000;
  unsigned quadrature_max_n = 40;
  std::uint64_t quadrature_max_nodes = 50'000'000;
};

/// The vector x of positive integers whose sign partitions are counted.
///
/// Elements are arbitrary precision so that instances produced by the SAT
/// reduction (elements of many digits) share the type with small test vectors.
class PartitionInstance {
 public:
  explicit PartitionInstance(std::vector<mpz_class> numbers);
  PartitionInstance(std::initializer_list<unsigned long> numbers);

  static PartitionInstance from_u64(std::span<const std::uint64_t> numbers);

  const std::vector<mpz_class>& numbers() const { return numbers_; }
  const mpz_class& operator[](std::size_t k) const { return numbers_[k]; }
  std::size_t size() const { return numbers_.size(); }
  const mpz_class& total() const { return total_; }

  // Set when total (and hence every element) fits in 63 bits.
  std::optional<std::uint64_t> small_total() const { return small_total_; }

  // Elements as machine words; throws LimitError when total does not fit.
  std::vector<std::uint64_t> small_numbers() const;

  PartitionInstance with_replaced(std::size_t index, const mpz_class& value) const;
  PartitionInstance with_appended(const mpz_class& value) const;
  PartitionInstance scaled(const mpz_class& factor) const;

  std::string to_string() const;

  friend bool operator==(const PartitionInstance& a, const PartitionInstance& b) {
    return a.numbers_ == b.numbers_;
  }

 private:
  std::vector<mpz_class> numbers_;
  mpz_class total_;
  std::optional<std::uint64_t> small_total_;
};

struct Partition {
  std::vector<int> signs;  // each entry -1 or +1
};

// Signed size <x, sigma>.
mpz_class partition_size(const PartitionInstance& inst, const Partition& sigma);

/// Counts c_u of partitions of each size u in [-total, total].
///
/// Sizes share the parity of total, so storage is indexed by the subset sum
/// T = (u + total) / 2 of the positive-sign elements.
class SizeSpectrum {
 public:
  SizeSpectrum(std::int64_t total, std::vector<Count> subset_counts);

  std::int64_t total() const { return total_; }
  // c_u; zero outside the support or on the wrong parity.
  Count at(std::int64_t u) const;
  // Number of subsets summing to T, T in [0, total].
  const std::vector<Count>& subset_counts() const { return subset_counts_; }
  Count mass() const;

 private:
  std::int64_t total_;
  std::vector<Count> subset_counts_;
};

struct ResidueSpectrum {
  std::uint64_t modulus = 1;
  std::vector<Count> counts;  // counts[j]: partitions with size = j (mod modulus)

  Count mass() const;
};

}  // namespace zpart
