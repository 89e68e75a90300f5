#include "zpart/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "zpart/counting.hpp"
#include "zpart/errors.hpp"

namespace zpart {

namespace {

void check_primes(const std::vector<std::uint64_t>& primes) {
  if (primes.empty()) throw DomainError("prime list is empty");
  for (std::uint64_t p : primes) {
    const mpz_class v(static_cast<unsigned long>(p));
    if (p < 2 || mpz_probab_prime_p(v.get_mpz_t(), 30) == 0) {
      throw DomainError(std::to_string(p) + " is not a prime");
    }
  }
}

Count full_mass(std::size_t n) {
  Count c;
  mpz_setbit(c.get_mpz_t(), n);
  return c;
}

double central_binomial(unsigned n) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, n / 2);
  return c.get_d();
}

}  // namespace

SieveReport sieve(const std::vector<PartitionInstance>& family, const std::vector<std::uint64_t>& primes,
                  const Limits& limits) {
  check_primes(primes);
  if (family.empty()) throw DomainError("sieve family is empty");
  SieveReport report;
  bool first = true;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Count all = full_mass(family[i].size());
    for (std::uint64_t p : primes) {
      ResidueSpectrum spectrum = residue_spectrum_dp(family[i], p, limits);
      if (sgn(spectrum.counts[0]) == 0) {
        report.certificates.push_back({i, p, 0, 0, "no partition size is divisible by p"});
      }
      for (std::uint64_t j = 1; j < p; ++j) {
        if (spectrum.counts[j] == all) {
          report.certificates.push_back({i, p, j, all, "every partition size lies in a nonzero class"});
        }
      }
      if (first || spectrum.counts[0] < report.zero_upper_bound) report.zero_upper_bound = spectrum.counts[0];
      first = false;
      report.cells.push_back({i, p, std::move(spectrum.counts)});
    }
  }
  return report;
}

bool certificate_valid(const SieveReport& report, const Certificate& cert, std::size_t n) {
  const auto it = std::find_if(report.cells.begin(), report.cells.end(), [&](const SieveCell& c) {
    return c.instance == cert.instance && c.prime == cert.prime;
  });
  if (it == report.cells.end() || cert.remainder >= it->counts.size()) return false;
  const Count& stored = it->counts[cert.remainder];
  if (stored != cert.count) return false;
  return cert.remainder == 0 ? sgn(stored) == 0 : stored == full_mass(n);
}

double divisibility_probability(std::uint64_t p, unsigned n) {
  if (p < 2) throw DomainError("p must be at least 2");
  if (n < 1) throw DomainError("n must be at least 1");
  const double log_miss = std::ldexp(1.0, static_cast<int>(std::min(n, 1100u))) * std::log1p(-1.0 / static_cast<double>(p));
  return -std::expm1(log_miss);
}

ConfidenceReport heuristic_confidence(const std::vector<std::uint64_t>& primes, unsigned reductions, unsigned n,
                                      ExponentMode mode) {
  if (primes.empty()) throw DomainError("prime list is empty");
  if (reductions < 1) throw DomainError("at least one reduction is required");
  if (n < 1) throw DomainError("n must be at least 1");
  ConfidenceReport out;
  out.exponent = mode == ExponentMode::Full ? std::ldexp(1.0, static_cast<int>(std::min(n, 1100u)))
                                            : central_binomial(n);
  const double k = static_cast<double>(reductions);
  double log_product = 0.0;
  double miss_sum = 0.0;
  for (std::uint64_t p : primes) {
    if (p < 2) throw DomainError("p must be at least 2");
    const double log_miss = out.exponent * std::log1p(-1.0 / static_cast<double>(p));  // log (1 - 1/p)^E
    const double miss = std::exp(log_miss);
    log_product += k * std::log1p(-miss);
    miss_sum += miss;
  }
  // log1p(-m) <= -m holds exactly; keep it through rounding.
  out.exponential_bound = std::exp(-k * miss_sum);
  out.product_form = std::min(std::exp(log_product), out.exponential_bound);
  out.confidence = 1.0 - out.exponential_bound;
  return out;
}

const char* to_string(Verdict v) {
  return v == Verdict::UnsatCertified ? "unsat_certified" : "unknown";
}

std::vector<std::uint64_t> default_primes() {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= 97; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) prime = false;
    }
    if (prime) out.push_back(p);
  }
  return out;
}

std::vector<unsigned> default_radices() { return {6, 7, 10, 16}; }

Estimate estimate_sharp_sat(const CnfFormula& f, const std::vector<unsigned>& radices,
                            const std::vector<std::uint64_t>& primes, ReductionVariant variant,
                            const Limits& limits) {
  if (variant != ReductionVariant::Parsimonious) {
    throw DomainError("estimation needs the parsimonious reduction; the paper variant does not preserve model counts");
  }
  check_primes(primes);
  Estimate out;
  out.family = multi_radix_family(f, radices, variant);
  std::vector<PartitionInstance> instances;
  for (const auto& m : out.family) instances.push_back(m.partition);
  out.sieve = sieve(instances, primes, limits);
  out.verdict = out.sieve.certificates.empty() ? Verdict::Unknown : Verdict::UnsatCertified;
  out.sat_upper_bound = out.sieve.zero_upper_bound / 2;
  out.confidence = heuristic_confidence(primes, static_cast<unsigned>(instances.size()),
                                        static_cast<unsigned>(instances.front().size()), ExponentMode::Full);
  return out;
}

}  // namespace zpart
