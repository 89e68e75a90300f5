#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "zpart/instance.hpp"

namespace zpart {

// Worker threads for enumeration; read from ZPART_WORKERS, default 1.
unsigned worker_count();

/// Exhaustive enumeration of all 2^n sign vectors.
///
/// Refuses instances with n above limits.oracle_max_n. The enumeration walks a
/// Gray code so each step updates the running size by a single element; the
/// range is split across worker_count() threads and partial counts are summed
/// in worker order.
Count count_zero_oracle(const PartitionInstance& inst, const Limits& limits = {});

// Sum of sigma_i * sigma_j over all zero partitions, by enumeration.
std::int64_t zero_partition_sign_sum(const PartitionInstance& inst, std::size_t i, std::size_t j,
                                     const Limits& limits = {});

// Pseudo-polynomial subset-sum DP; requires total <= limits.dp_max_total.
SizeSpectrum size_spectrum(const PartitionInstance& inst, const Limits& limits = {});

Count count_zero_dp(const PartitionInstance& inst, const Limits& limits = {});

// Exact counts per residue class of the size modulo `modulus`, O(n * modulus).
ResidueSpectrum residue_spectrum_dp(const PartitionInstance& inst, std::uint64_t modulus,
                                    const Limits& limits = {});

// Picks the cheapest exact counter whose guard admits the instance
// (DP, then the big-integer encoding, then enumeration).
Count count_zero_exact(const PartitionInstance& inst, const Limits& limits = {});

/// Doubling/appending relation between zero counts.
///
/// For element m: D counts zero partitions after doubling x_m, A after
/// appending a second copy of x_m, R after removing x_m (the empty vector
/// counts as one zero partition). The derivable relation is A = D + 2R; the
/// often-quoted Z = D + A is reported alongside and does not hold in general.
struct DoubleAppendIdentity {
  Count zero;      // Z
  Count doubled;   // D
  Count appended;  // A
  Count removed;   // R
  bool holds = false;             // A == D + 2R
  bool stated_form_holds = false; // Z == D + A

  Count lhs() const { return appended; }
  Count rhs() const { return doubled + 2 * removed; }
  Count stated_lhs() const { return zero; }
  Count stated_rhs() const { return doubled + appended; }
};

DoubleAppendIdentity identity_double_append(const PartitionInstance& inst, std::size_t index,
                                            const Limits& limits = {});

}  // namespace zpart
