#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zpart/instance.hpp"
#include "zpart/reduction.hpp"

namespace zpart {

struct SieveCell {
  std::size_t instance = 0;
  std::uint64_t prime = 0;
  std::vector<Count> counts;  // residue spectrum mod prime
};

// Proof that an instance has no zero partition: its class-0 count is 0, or a
// nonzero class holds all 2^n partitions.
struct Certificate {
  std::size_t instance = 0;
  std::uint64_t prime = 0;
  std::uint64_t remainder = 0;
  Count count;
  std::string reason;
};

struct SieveReport {
  std::vector<SieveCell> cells;  // ordered by (instance, prime)
  std::vector<Certificate> certificates;
  Count zero_upper_bound;  // min over cells of counts[0]
};

/// Exact residue spectra of every family member modulo every prime.
///
/// Only residue spectra are read; the upper bound and the certificates are
/// both derived from them.
SieveReport sieve(const std::vector<PartitionInstance>& family, const std::vector<std::uint64_t>& primes,
                  const Limits& limits = {});

// Re-derives a certificate from the stored cell it cites.
bool certificate_valid(const SieveReport& report, const Certificate& cert, std::size_t n);

// Heuristic 1 - (1 - 1/p)^(2^n), evaluated in log space.
double divisibility_probability(std::uint64_t p, unsigned n);

enum class ExponentMode { Full, Conjecture };

/// Heuristic probability that every (reduction, prime) pair still admits a
/// nonzero size divisible by p: the product form and its exponential upper bound.
struct ConfidenceReport {
  double product_form = 0.0;       // prod_p [1 - (1 - 1/p)^E]^K
  double exponential_bound = 0.0;  // exp(-K sum_p (1 - 1/p)^E) >= product_form
  double confidence = 0.0;         // 1 - exponential_bound
  double exponent = 0.0;           // E: 2^n or C(n, floor(n/2))
};

ConfidenceReport heuristic_confidence(const std::vector<std::uint64_t>& primes, unsigned reductions, unsigned n,
                                      ExponentMode mode);

enum class Verdict { UnsatCertified, Unknown };

const char* to_string(Verdict v);

struct Estimate {
  Verdict verdict = Verdict::Unknown;
  Count sat_upper_bound;  // zero_upper_bound / 2
  ConfidenceReport confidence;  // heuristic; never used for certification
  SieveReport sieve;
  std::vector<FamilyMember> family;
};

std::vector<std::uint64_t> default_primes();   // primes up to 97
std::vector<unsigned> default_radices();       // 6, 7, 10, 16

Estimate estimate_sharp_sat(const CnfFormula& f, const std::vector<unsigned>& radices,
                            const std::vector<std::uint64_t>& primes,
                            ReductionVariant variant = ReductionVariant::Parsimonious, const Limits& limits = {});

}  // namespace zpart
