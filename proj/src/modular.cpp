#include "zpart/modular.hpp"

#include <algorithm>
#include <limits>

#include "zpart/counting.hpp"
#include "zpart/errors.hpp"

namespace zpart {

namespace {

constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

std::uint64_t checked_exponent(const mpz_class& value) {
  if (mpz_sizeinbase(value.get_mpz_t(), 2) > 63) return kUnbounded;
  return mpz_get_ui(value.get_mpz_t());
}

mpz_class product_tree(std::vector<mpz_class>& factors, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return std::move(factors[lo]);
  const std::size_t mid = lo + (hi - lo) / 2;
  mpz_class left = product_tree(factors, lo, mid);
  mpz_class right = product_tree(factors, mid, hi);
  return left * right;
}

// prod_k (1 + base^(scale * x_k)), factors multiplied in a balanced tree by ascending exponent.
mpz_class encoded_product_in_base(const PartitionInstance& inst, unsigned base, std::uint64_t scale) {
  std::vector<std::uint64_t> exponents;
  exponents.reserve(inst.size());
  for (const auto& x : inst.numbers()) exponents.push_back(checked_exponent(x * scale));
  std::sort(exponents.begin(), exponents.end());
  std::vector<mpz_class> factors;
  factors.reserve(exponents.size());
  const mpz_class b(base);
  for (std::uint64_t e : exponents) {
    mpz_class f;
    mpz_pow_ui(f.get_mpz_t(), b.get_mpz_t(), e);
    factors.push_back(f + 1);
  }
  return product_tree(factors, 0, factors.size());
}

void check_bits(std::uint64_t bits, const Limits& limits) {
  if (bits > limits.modular_max_bits) {
    throw LimitError("encoded product needs " + (bits == kUnbounded ? std::string("over 2^64") : std::to_string(bits)) +
                     " bits, above the cap of " + std::to_string(limits.modular_max_bits));
  }
}

// Cuts `value` into `count` blocks of `width` bits, halving recursively so the
// whole read is O(|M| log) rather than one full shift per block.
void split_blocks(const mpz_class& value, std::uint64_t width, std::uint64_t first, std::uint64_t count,
                  std::vector<Count>& out) {
  if (count == 1) {
    mpz_fdiv_r_2exp(out[first].get_mpz_t(), value.get_mpz_t(), width);
    return;
  }
  const std::uint64_t half = count / 2;
  mpz_class low, high;
  mpz_fdiv_r_2exp(low.get_mpz_t(), value.get_mpz_t(), half * width);
  mpz_fdiv_q_2exp(high.get_mpz_t(), value.get_mpz_t(), half * width);
  split_blocks(low, width, first, half, out);
  split_blocks(high, width, first + half, count - half, out);
}

}  // namespace

std::uint64_t encoded_product_bits(const PartitionInstance& inst) {
  const mpz_class bits = mpz_class(static_cast<unsigned long>(2 * inst.size())) * inst.total() + 1;
  return checked_exponent(bits);
}

EncodedProduct build_encoded_product(const PartitionInstance& inst, const Limits& limits) {
  check_bits(encoded_product_bits(inst), limits);
  EncodedProduct out;
  out.n = inst.size();
  out.block_bits = 2 * out.n;
  out.offset = mpz_class(static_cast<unsigned long>(out.n)) * inst.total();
  out.value = encoded_product_in_base(inst, 2, out.block_bits);
  return out;
}

Count count_zero_modular(const PartitionInstance& inst, const Limits& limits) {
  const EncodedProduct m = build_encoded_product(inst, limits);
  Count c;
  mpz_fdiv_q_2exp(c.get_mpz_t(), m.value.get_mpz_t(), mpz_get_ui(m.offset.get_mpz_t()));
  mpz_fdiv_r_2exp(c.get_mpz_t(), c.get_mpz_t(), m.n);
  return c;
}

Count count_zero_modular_radix(const PartitionInstance& inst, unsigned radix, const Limits& limits) {
  if (radix < 2) throw DomainError("radix must be at least 2");
  std::uint64_t digit_bits = 0;
  for (unsigned r = radix - 1; r; r >>= 1) ++digit_bits;
  const std::uint64_t bits = encoded_product_bits(inst);
  check_bits(bits == kUnbounded || bits > kUnbounded / digit_bits ? kUnbounded : bits * digit_bits, limits);

  const std::size_t n = inst.size();
  const mpz_class value = encoded_product_in_base(inst, radix, 2 * n);
  const mpz_class b(radix);
  mpz_class shift, window;
  const std::uint64_t offset = n * mpz_get_ui(inst.total().get_mpz_t());
  mpz_pow_ui(shift.get_mpz_t(), b.get_mpz_t(), offset);
  mpz_pow_ui(window.get_mpz_t(), b.get_mpz_t(), n);
  mpz_class q = value / shift;
  return q % window;
}

std::vector<Count> subset_sum_spectrum(const PartitionInstance& inst, const Limits& limits) {
  const EncodedProduct m = build_encoded_product(inst, limits);
  const std::uint64_t total = mpz_get_ui(inst.total().get_mpz_t());
  std::vector<Count> out(total + 1);
  split_blocks(m.value, m.block_bits, 0, total + 1, out);
  return out;
}

mpq_class Dyadic::to_rational() const {
  mpz_class den;
  mpz_setbit(den.get_mpz_t(), exponent);
  mpq_class q(numerator, den);
  q.canonicalize();
  return q;
}

Dyadic hyperbolic_expectation(const PartitionInstance& inst) {
  // 2^x + 2^-x = (1 + 4^x) / 2^x
  const std::uint64_t total = checked_exponent(inst.total());
  if (total == kUnbounded) throw LimitError("instance total too large for an exact dyadic expectation");
  return Dyadic{encoded_product_in_base(inst, 4, 1), total};
}

Dyadic hyperbolic_expectation_from_spectrum(const PartitionInstance& inst, const Limits& limits) {
  const SizeSpectrum spectrum = size_spectrum(inst, limits);
  // sum_u c_u 2^u with u = 2T - total, scaled by 2^total.
  mpz_class numerator;
  const auto& subset = spectrum.subset_counts();
  for (std::size_t t = 0; t < subset.size(); ++t) {
    mpz_class term;
    mpz_mul_2exp(term.get_mpz_t(), subset[t].get_mpz_t(), 2 * t);
    numerator += term;
  }
  Dyadic out{numerator, static_cast<std::uint64_t>(spectrum.total())};
  while (out.exponent > 0 && mpz_even_p(out.numerator.get_mpz_t())) {
    out.numerator >>= 1;
    --out.exponent;
  }
  return out;
}

}  // namespace zpart
