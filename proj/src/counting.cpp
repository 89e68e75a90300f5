#include "zpart/counting.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <thread>
#include <vector>

#include "zpart/errors.hpp"
#include "zpart/modular.hpp"

namespace zpart {

unsigned worker_count() {
  if (const char* env = std::getenv("ZPART_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
  }
  return 1;
}

namespace {

void check_oracle_guard(const PartitionInstance& inst, const Limits& limits) {
  if (inst.size() > limits.oracle_max_n || inst.size() > 62) {
    throw LimitError("instance too large for oracle: n = " + std::to_string(inst.size()) +
                     " exceeds " + std::to_string(limits.oracle_max_n));
  }
}

// Walks Gray-code indices [first, last). Bit k of the code set means sigma_k = +1.
// `visit(size, code)` is called for every sign vector in the range.
template <typename Int, typename Visit>
void walk_gray(const std::vector<Int>& x, std::uint64_t first, std::uint64_t last, Visit&& visit) {
  if (first >= last) return;
  std::uint64_t code = first ^ (first >> 1);
  Int size = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (code >> k & 1U) {
      size += x[k];
    } else {
      size -= x[k];
    }
  }
  visit(size, code);
  for (std::uint64_t i = first + 1; i < last; ++i) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(i));
    code ^= std::uint64_t{1} << bit;
    if (code >> bit & 1U) {
      size += x[bit];
      size += x[bit];
    } else {
      size -= x[bit];
      size -= x[bit];
    }
    visit(size, code);
  }
}

template <typename Int, typename Visit>
std::vector<std::int64_t> parallel_walk(const std::vector<Int>& x, Visit visit_factory) {
  const std::uint64_t space = std::uint64_t{1} << x.size();
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(space >> 12, 1)));
  std::vector<std::int64_t> partial(workers, 0);
  auto run = [&](unsigned w) {
    const std::uint64_t first = space / workers * w;
    const std::uint64_t last = w + 1 == workers ? space : space / workers * (w + 1);
    auto visit = visit_factory(partial[w]);
    walk_gray(x, first, last, visit);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  return partial;
}

template <typename Visitor>
std::int64_t enumerate_sum(const PartitionInstance& inst, Visitor visitor) {
  std::vector<std::int64_t> partial;
  if (inst.small_total()) {
    std::vector<std::int64_t> x;
    for (auto v : inst.small_numbers()) x.push_back(static_cast<std::int64_t>(v));
    partial = parallel_walk(x, [&](std::int64_t& acc) {
      return [&acc, &visitor](std::int64_t size, std::uint64_t code) {
        if (size == 0) acc += visitor(code);
      };
    });
  } else {
    partial = parallel_walk(inst.numbers(), [&](std::int64_t& acc) {
      return [&acc, &visitor](const mpz_class& size, std::uint64_t code) {
        if (sgn(size) == 0) acc += visitor(code);
      };
    });
  }
  std::int64_t sum = 0;
  for (auto p : partial) sum += p;
  return sum;
}

}  // namespace

Count count_zero_oracle(const PartitionInstance& inst, const Limits& limits) {
  check_oracle_guard(inst, limits);
  const std::int64_t c = enumerate_sum(inst, [](std::uint64_t) { return std::int64_t{1}; });
  return Count(static_cast<long>(c));
}

std::int64_t zero_partition_sign_sum(const PartitionInstance& inst, std::size_t i, std::size_t j,
                                     const Limits& limits) {
  if (i >= inst.size() || j >= inst.size()) throw DomainError("sign index out of range");
  if (i == j) throw DomainError("sign correlation needs two distinct indices");
  check_oracle_guard(inst, limits);
  return enumerate_sum(inst, [i, j](std::uint64_t code) {
    return ((code >> i) & 1U) == ((code >> j) & 1U) ? std::int64_t{1} : std::int64_t{-1};
  });
}

namespace {

std::uint64_t dp_total(const PartitionInstance& inst, const Limits& limits) {
  const auto total = inst.small_total();
  if (!total || *total > limits.dp_max_total) {
    throw LimitError("total " + inst.total().get_str() + " exceeds DP bound " +
                     std::to_string(limits.dp_max_total));
  }
  return *total;
}

// Subset counts for sums 0..limit. Counts stay below 2^n, so machine words suffice for n < 64.
std::vector<Count> subset_counts(const PartitionInstance& inst, std::uint64_t limit) {
  const auto xs = inst.small_numbers();
  std::vector<Count> out(limit + 1);
  if (inst.size() < 64) {
    std::vector<std::uint64_t> table(limit + 1, 0);
    table[0] = 1;
    std::uint64_t reach = 0;
    for (std::uint64_t x : xs) {
      reach = std::min(reach + x, limit);
      for (std::uint64_t t = reach; t >= x; --t) table[t] += table[t - x];
    }
    for (std::uint64_t t = 0; t <= limit; ++t) out[t] = static_cast<unsigned long>(table[t]);
    return out;
  }
  out[0] = 1;
  std::uint64_t reach = 0;
  for (std::uint64_t x : xs) {
    reach = std::min(reach + x, limit);
    for (std::uint64_t t = reach; t >= x; --t) out[t] += out[t - x];
  }
  return out;
}

}  // namespace

SizeSpectrum size_spectrum(const PartitionInstance& inst, const Limits& limits) {
  const std::uint64_t total = dp_total(inst, limits);
  return SizeSpectrum(static_cast<std::int64_t>(total), subset_counts(inst, total));
}

Count count_zero_dp(const PartitionInstance& inst, const Limits& limits) {
  const std::uint64_t total = dp_total(inst, limits);
  if (total % 2 == 1) return 0;
  return subset_counts(inst, total / 2)[total / 2];
}

ResidueSpectrum residue_spectrum_dp(const PartitionInstance& inst, std::uint64_t modulus,
                                    const Limits& limits) {
  if (modulus == 0) throw DomainError("modulus must be at least 1");
  if (modulus > limits.residue_max_modulus) {
    throw LimitError("modulus " + std::to_string(modulus) + " exceeds residue table bound " +
                     std::to_string(limits.residue_max_modulus));
  }
  std::vector<Count> cur(modulus), next(modulus);
  cur[0] = 1;
  const mpz_class n_mod(static_cast<unsigned long>(modulus));
  for (const auto& x : inst.numbers()) {
    mpz_class r_big = x % n_mod;
    const std::uint64_t r = mpz_get_ui(r_big.get_mpz_t());
    for (std::uint64_t j = 0; j < modulus; ++j) {
      // sigma = +1 moves class j to j + r, sigma = -1 to j - r.
      const std::uint64_t from_plus = (j + modulus - r) % modulus;
      const std::uint64_t from_minus = (j + r) % modulus;
      next[j] = cur[from_plus] + cur[from_minus];
    }
    std::swap(cur, next);
  }
  return ResidueSpectrum{modulus, std::move(cur)};
}

Count count_zero_exact(const PartitionInstance& inst, const Limits& limits) {
  const auto t = inst.small_total();
  const bool dp_ok = t && *t <= limits.dp_max_total;
  const bool oracle_ok = inst.size() <= std::min(limits.oracle_max_n, 62u);
  if (oracle_ok && (!dp_ok || (std::uint64_t{1} << inst.size()) <= inst.size() * *t)) {
    return count_zero_oracle(inst, limits);
  }
  if (dp_ok) return count_zero_dp(inst, limits);
  if (encoded_product_bits(inst) <= limits.modular_max_bits) return count_zero_modular(inst, limits);
  return count_zero_oracle(inst, limits);
}

DoubleAppendIdentity identity_double_append(const PartitionInstance& inst, std::size_t index,
                                            const Limits& limits) {
  if (index >= inst.size()) {
    throw DomainError("index " + std::to_string(index) + " out of range for n = " + std::to_string(inst.size()));
  }
  const mpz_class& x = inst[index];
  DoubleAppendIdentity out;
  out.zero = count_zero_oracle(inst, limits);
  out.doubled = count_zero_oracle(inst.with_replaced(index, 2 * x), limits);
  out.appended = count_zero_oracle(inst.with_appended(x), limits);
  if (inst.size() == 1) {
    out.removed = 1;  // the empty vector has one partition, of size 0
  } else {
    std::vector<mpz_class> rest;
    for (std::size_t k = 0; k < inst.size(); ++k) {
      if (k != index) rest.push_back(inst[k]);
    }
    out.removed = count_zero_oracle(PartitionInstance(std::move(rest)), limits);
  }
  out.holds = out.lhs() == out.rhs();
  out.stated_form_holds = out.stated_lhs() == out.stated_rhs();
  return out;
}

}  // namespace zpart
