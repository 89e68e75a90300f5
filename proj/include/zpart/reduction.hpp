#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "zpart/instance.hpp"

namespace zpart {

// DIMACS literals: +v or -v for variable v in [1, num_vars].
using Clause = std::vector<int>;

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  // Variables that occur in no clause. The reduction still emits their
  // y/z pair, so each one doubles the pipeline count like any free choice.
  int free_variables() const;
};

/// Parses DIMACS CNF restricted to clauses of 1 to 3 literals.
///
/// Duplicate literals inside a clause are collapsed; tautological clauses,
/// empty clauses, out-of-range literals and clause-count mismatches raise
/// ParseError carrying the line number.
CnfFormula parse_dimacs(std::string_view text);
CnfFormula load_dimacs(const std::string& path);
std::string to_dimacs(const CnfFormula& f);

enum class ReductionVariant {
  Parsimonious,  // clause target digit 4, slacks 1 and 2: one subset per model
  Paper,         // clause target digit 3, slacks 1 and 1: two subsets per clause with exactly two true literals
};

const char* to_string(ReductionVariant v);
ReductionVariant parse_variant(std::string_view name);

/// Subset-sum instance from the SAT reduction, kept as base-b digit vectors.
///
/// Digit positions are least significant first. Clause m (1-based) owns
/// digit k - m and variable i owns digit k + l - i, so the target reads as l
/// ones followed by k clause digits. Numbers are ordered y_1, z_1, ..., y_l,
/// z_l, g_1, h_1, ..., g_k, h_k.
struct SubsetSumInstance {
  std::vector<mpz_class> numbers;
  mpz_class target;
  unsigned radix = 10;
  ReductionVariant variant = ReductionVariant::Parsimonious;
  std::vector<std::vector<std::uint8_t>> digit_vectors;
  std::vector<std::uint8_t> target_digits;
  std::vector<std::string> labels;

  // The same digits read in another radix.
  SubsetSumInstance in_radix(unsigned radix) const;
};

mpz_class value_from_digits(const std::vector<std::uint8_t>& digits, unsigned radix);

SubsetSumInstance sat_to_subset_sum(const CnfFormula& f, unsigned radix,
                                    ReductionVariant variant = ReductionVariant::Parsimonious);

struct DigitProfile {
  unsigned max_digit = 0;
  std::vector<unsigned> column_sums;
  // Every column satisfies column_sum < target_digit + radix, so a subset
  // hitting the target carries nowhere and matches it digit by digit.
  bool carry_free_on_target = false;
};

DigitProfile digit_profile(const SubsetSumInstance& ss);

// Zero partitions of the result = zero_partitions_per_subset * subsets summing to target.
struct PartitionReduction {
  PartitionInstance instance;
  unsigned zero_partitions_per_subset = 2;
};

/// Appends the anchors 2s - t and s + t (in that order, last) where s is the
/// sum of the set. Requires 0 < t <= s.
PartitionReduction subset_sum_to_partition(const std::vector<mpz_class>& numbers, const mpz_class& target);
PartitionReduction subset_sum_to_partition(const SubsetSumInstance& ss);

struct FamilyMember {
  unsigned radix = 0;
  SubsetSumInstance subset_sum;
  PartitionInstance partition;
};

std::vector<FamilyMember> multi_radix_family(const CnfFormula& f, const std::vector<unsigned>& radices,
                                             ReductionVariant variant = ReductionVariant::Parsimonious);

struct PipelineCount {
  Count zero_partitions;
  Count subsets;    // zero_partitions / 2
  Count sat_count;  // #SAT for the parsimonious variant; the weighted count for the paper variant
  ReductionVariant variant = ReductionVariant::Parsimonious;
  std::string multiplicity;
};

PipelineCount count_sat_via_pipeline(const CnfFormula& f, unsigned radix,
                                     ReductionVariant variant = ReductionVariant::Parsimonious,
                                     const Limits& limits = {});

}  // namespace zpart
