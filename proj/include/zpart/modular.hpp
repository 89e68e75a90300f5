#pragma once

#include <cstdint>
#include <vector>

#include "zpart/instance.hpp"

namespace zpart {

/// The product M = prod_k (1 + 2^(2 n x_k)).
///
/// Expanding the product gives M = sum over subsets of 2^(2n * subset sum),
/// so M is the subset-sum spectrum written in 2n-bit blocks. Every block holds
/// a count of at most 2^n, hence blocks never carry into their neighbours.
struct EncodedProduct {
  mpz_class value;            // M
  std::size_t n = 0;
  mpz_class offset;           // s = n * total, the block of subsets summing to total/2
  std::uint64_t block_bits = 0;  // 2n
};

// Bit length of M before building it: 2n * total + 1.
std::uint64_t encoded_product_bits(const PartitionInstance& inst);

// Balanced product tree over factors sorted by exponent.
// Throws LimitError when the bit length exceeds limits.modular_max_bits.
EncodedProduct build_encoded_product(const PartitionInstance& inst, const Limits& limits = {});

// floor(M / 2^s) mod 2^n, i.e. bits [s, s + n) of M.
Count count_zero_modular(const PartitionInstance& inst, const Limits& limits = {});

// Zero count read from the same encoding in base `radix` >= 2:
// floor(M_B / B^s) mod B^n with M_B = prod (1 + B^(2 n x_k)).
Count count_zero_modular_radix(const PartitionInstance& inst, unsigned radix, const Limits& limits = {});

// Entry T = number of subsets of x summing to T, for T in [0, total].
std::vector<Count> subset_sum_spectrum(const PartitionInstance& inst, const Limits& limits = {});

// Exact dyadic rational numerator / 2^exponent.
struct Dyadic {
  mpz_class numerator;
  std::uint64_t exponent = 0;

  mpq_class to_rational() const;
};

// prod_k (2^x_k + 2^-x_k) = sum over sign vectors of 2^<x, sigma>, which is 2^n times
// the expectation of 2^<x, sigma> under uniform signs.
Dyadic hyperbolic_expectation(const PartitionInstance& inst);

// The same sum from the exact size spectrum: sum_u c_u 2^u.
Dyadic hyperbolic_expectation_from_spectrum(const PartitionInstance& inst, const Limits& limits = {});

}  // namespace zpart
