#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zpart/counting.hpp"
#include "zpart/errors.hpp"
#include "zpart/modular.hpp"

using namespace zpart;

namespace {

PartitionInstance make(const oracle::Vec& x) {
  std::vector<std::uint64_t> u(x.begin(), x.end());
  return PartitionInstance::from_u64(u);
}

mpz_class pow2(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// M as the sum over subsets of 2^(2n * subset sum).
mpz_class sum_form(const oracle::Vec& x) {
  mpz_class m = 0;
  const unsigned long n = x.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    unsigned long s = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) s += static_cast<unsigned long>(x[k]);
    }
    m += pow2(2 * n * s);
  }
  return m;
}

}  // namespace

TEST_CASE("encoded product examples") {
  const EncodedProduct a = build_encoded_product({1, 1});
  CHECK(a.value == 289);
  CHECK(a.offset == 4);
  CHECK(a.block_bits == 4);
  CHECK(a.n == 2);

  CHECK(build_encoded_product({1}).value == 5);
  CHECK(build_encoded_product({1, 2, 3}).value == (1 + pow2(6)) * (1 + pow2(12)) * (1 + pow2(18)));
}

TEST_CASE("product equals its subset-sum expansion") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const auto x = oracle::random_vec(rng, 1, 12, 15);
    const EncodedProduct m = build_encoded_product(make(x));
    CHECK(m.value == sum_form(x));
    CHECK(mpz_sizeinbase(m.value.get_mpz_t(), 2) == encoded_product_bits(make(x)));
  }
}

TEST_CASE("modular counts") {
  CHECK(count_zero_modular({1, 1}) == 2);
  CHECK(count_zero_modular({1, 2, 3}) == 2);
  CHECK(count_zero_modular({5}) == 0);
  // floor(289 / 2^4) mod 4
  CHECK((mpz_class(289) >> 4) % 4 == 2);
}

TEST_CASE("modular count matches brute force") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = oracle::random_vec(rng, 1, 14, 40);
    CHECK(count_zero_modular(make(x)) == oracle::zero_count(x));
  }
}

TEST_CASE("modular count is invariant under scaling") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = oracle::random_vec(rng, 1, 10, 12);
    const Count c = count_zero_modular(make(x));
    for (unsigned k : {2u, 3u, 5u}) CHECK(count_zero_modular(make(x).scaled(k)) == c);
  }
}

TEST_CASE("base 3 encoding gives the same count") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = oracle::random_vec(rng, 1, 8, 10);
    CHECK(count_zero_modular_radix(make(x), 3) == oracle::zero_count(x));
  }
  CHECK(count_zero_modular_radix({1, 1}, 2) == 2);
  CHECK_THROWS_AS(count_zero_modular_radix({1, 1}, 1), DomainError);
}

TEST_CASE("bit cap") {
  Limits lim;
  lim.modular_max_bits = 100;
  CHECK_THROWS_AS(build_encoded_product({50, 50}, lim), LimitError);
  CHECK_THROWS_AS(count_zero_modular({50, 50}, lim), LimitError);
  CHECK(count_zero_modular({5, 5}, lim) == 2);
}

TEST_CASE("subset-sum spectrum examples") {
  const auto a = subset_sum_spectrum({1, 1});
  REQUIRE(a.size() == 3);
  CHECK(a[0] == 1);
  CHECK(a[1] == 2);
  CHECK(a[2] == 1);

  const auto b = subset_sum_spectrum({1, 2, 3});
  const std::vector<int> expect{1, 1, 1, 2, 1, 1, 1};
  REQUIRE(b.size() == expect.size());
  for (std::size_t t = 0; t < expect.size(); ++t) CHECK(b[t] == expect[t]);

  const auto c = subset_sum_spectrum({2});
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 1);
  CHECK(c[1] == 0);
  CHECK(c[2] == 1);
}

TEST_CASE("subset-sum spectrum matches brute force and is symmetric") {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = oracle::random_vec(rng, 1, 10, 20);
    const auto sums = subset_sum_spectrum(make(x));
    std::vector<mpz_class> xs(x.begin(), x.end());
    const std::size_t total = sums.size() - 1;
    for (std::size_t t = 0; t <= total; ++t) {
      CHECK(sums[t] == oracle::subset_count(xs, static_cast<long>(t)));
      CHECK(sums[t] == sums[total - t]);
    }
  }
}

TEST_CASE("hyperbolic expectation") {
  CHECK(hyperbolic_expectation({1}).to_rational() == mpq_class(5, 2));
  CHECK(hyperbolic_expectation({1, 1}).to_rational() == mpq_class(25, 4));
  CHECK(hyperbolic_expectation({2}).to_rational() == mpq_class(17, 4));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = oracle::random_vec(rng, 1, 10, 12);
    const mpq_class lhs = hyperbolic_expectation(make(x)).to_rational();
    CHECK(lhs == hyperbolic_expectation_from_spectrum(make(x)).to_rational());
    // direct: sum over signs of 2^size
    mpq_class direct = 0;
    for (const auto& [u, c] : oracle::sizes(x)) {
      mpq_class term = c;
      if (u >= 0) {
        term *= pow2(static_cast<unsigned long>(u));
      } else {
        term /= pow2(static_cast<unsigned long>(-u));
      }
      direct += term;
    }
    direct.canonicalize();
    CHECK(lhs == direct);
  }
}
