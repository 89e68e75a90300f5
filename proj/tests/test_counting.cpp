#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zpart/counting.hpp"
#include "zpart/errors.hpp"

using namespace zpart;

namespace {

PartitionInstance make(const oracle::Vec& x) {
  std::vector<std::uint64_t> u(x.begin(), x.end());
  return PartitionInstance::from_u64(u);
}

}  // namespace

TEST_CASE("oracle on small vectors") {
  CHECK(count_zero_oracle({1}) == 0);
  CHECK(count_zero_oracle({1, 1}) == 2);
  CHECK(count_zero_oracle({1, 2, 3}) == 2);
  CHECK(count_zero_oracle({1, 1, 1, 1}) == 6);
}

TEST_CASE("oracle guard") {
  Limits lim;
  lim.oracle_max_n = 4;
  CHECK_THROWS_WITH_AS(count_zero_oracle({1, 1, 1, 1, 1}, lim), doctest::Contains("instance too large for oracle"),
                       LimitError);
  CHECK(count_zero_oracle({1, 1, 1, 1}, lim) == 6);
}

TEST_CASE("oracle is independent of the worker count") {
  const PartitionInstance x{3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3};
  setenv("ZPART_WORKERS", "1", 1);
  const Count one = count_zero_oracle(x);
  setenv("ZPART_WORKERS", "4", 1);
  const Count four = count_zero_oracle(x);
  unsetenv("ZPART_WORKERS");
  CHECK(one == four);
  CHECK(one == oracle::zero_count({3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3}));
}

TEST_CASE("oracle handles elements beyond 64 bits") {
  const mpz_class big("340282366920938463463374607431768211456");  // 2^128
  const PartitionInstance x(std::vector<mpz_class>{big, big, 2 * big});
  CHECK(count_zero_oracle(x) == 2);
  CHECK(count_zero_exact(x) == 2);
}

TEST_CASE("size spectrum examples") {
  const SizeSpectrum s = size_spectrum({1, 2, 3});
  for (long u : {6, 4, 2}) {
    CHECK(s.at(u) == 1);
    CHECK(s.at(-u) == 1);
  }
  CHECK(s.at(0) == 2);
  CHECK(s.mass() == 8);

  const SizeSpectrum one = size_spectrum({1});
  CHECK(one.at(1) == 1);
  CHECK(one.at(-1) == 1);
  CHECK(one.at(0) == 0);

  const SizeSpectrum pair = size_spectrum({1, 1});
  CHECK(pair.at(2) == 1);
  CHECK(pair.at(0) == 2);
  CHECK(pair.at(-2) == 1);
}

TEST_CASE("size spectrum guard") {
  Limits lim;
  lim.dp_max_total = 10;
  CHECK_THROWS_AS(size_spectrum({5, 6}, lim), LimitError);
  CHECK_THROWS_AS(count_zero_dp({5, 6}, lim), LimitError);
}

TEST_CASE("dp counts") {
  CHECK(count_zero_dp({1, 2, 3}) == 2);
  CHECK(count_zero_dp({5}) == 0);
  CHECK(count_zero_dp({3, 3}) == 2);
}

TEST_CASE("residue spectrum examples") {
  const PartitionInstance x{1, 2, 3};
  CHECK(residue_spectrum_dp(x, 3).counts[0] == 4);
  CHECK(residue_spectrum_dp(x, 1).counts[0] == 8);
  const auto two = residue_spectrum_dp(x, 2);
  CHECK(two.counts[0] == 8);
  CHECK(two.counts[1] == 0);
  CHECK(residue_spectrum_dp(x, 7).counts[0] == 2);
  CHECK_THROWS_AS(residue_spectrum_dp(x, 0), DomainError);
}

TEST_CASE("residue spectrum of huge elements reduces them exactly") {
  const mpz_class big("1000000000000000000000000000007");
  const PartitionInstance x(std::vector<mpz_class>{big, big + 1, 3});
  const oracle::Vec small{static_cast<long>(mpz_class(big % 11).get_si()),
                          static_cast<long>(mpz_class((big + 1) % 11).get_si()), 3};
  const auto rs = residue_spectrum_dp(x, 11);
  const auto expect = oracle::residues(small, 11);
  for (std::size_t j = 0; j < 11; ++j) CHECK(rs.counts[j] == expect[j]);
}

TEST_CASE("random agreement of oracle, DP and residue DP with brute force") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = oracle::random_vec(rng, 1, 12, 30);
    const PartitionInstance inst = make(x);
    const long expect = oracle::zero_count(x);
    CHECK(count_zero_oracle(inst) == expect);
    CHECK(count_zero_dp(inst) == expect);
    CHECK(residue_spectrum_dp(inst, *inst.small_total() + 1).counts[0] == expect);

    const SizeSpectrum s = size_spectrum(inst);
    CHECK(s.mass() == (Count(1) << static_cast<mp_bitcnt_t>(x.size())));
    for (const auto& [u, c] : oracle::sizes(x)) CHECK(s.at(u) == c);
    for (std::int64_t u = 0; u <= s.total(); ++u) CHECK(s.at(u) == s.at(-u));

    const long modulus = 1 + static_cast<long>(rng() % 20);
    const auto rs = residue_spectrum_dp(inst, static_cast<std::uint64_t>(modulus));
    const auto expect_rs = oracle::residues(x, modulus);
    CHECK(rs.mass() == s.mass());
    for (std::size_t j = 0; j < expect_rs.size(); ++j) CHECK(rs.counts[j] == expect_rs[j]);
  }
}

TEST_CASE("parity and scaling invariance") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = oracle::random_vec(rng, 1, 10, 20);
    const PartitionInstance inst = make(x);
    const Count c = count_zero_dp(inst);
    if (*inst.small_total() % 2 == 1) CHECK(c == 0);
    for (unsigned k : {2u, 3u, 5u}) CHECK(count_zero_dp(inst.scaled(k)) == c);
  }
}

TEST_CASE("zero count stays below the central binomial for even n") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = oracle::random_vec(rng, 1, 6, 6);
    if (x.size() % 2 == 1) x.push_back(1);
    Count bound;
    mpz_bin_uiui(bound.get_mpz_t(), x.size(), x.size() / 2);
    CHECK(count_zero_dp(make(x)) <= bound);
  }
}

TEST_CASE("sign sum by enumeration") {
  CHECK(zero_partition_sign_sum({1, 2, 3}, 0, 1) == 2);
  CHECK(zero_partition_sign_sum({1, 2, 3}, 0, 2) == -2);
  CHECK_THROWS(zero_partition_sign_sum({1, 2, 3}, 0, 3));
}

TEST_CASE("double/append identity examples") {
  const auto a = identity_double_append({2, 1, 1}, 0);
  CHECK(a.appended == 4);
  CHECK(a.doubled == 0);
  CHECK(a.removed == 2);
  CHECK(a.zero == 2);
  CHECK(a.holds);
  CHECK_FALSE(a.stated_form_holds);

  const auto b = identity_double_append({1, 1}, 0);
  CHECK(b.appended == 0);
  CHECK(b.doubled == 0);
  CHECK(b.removed == 0);
  CHECK(b.holds);
  CHECK(b.stated_lhs() == 2);
  CHECK(b.stated_rhs() == 0);
  CHECK_FALSE(b.stated_form_holds);

  const auto c = identity_double_append({1, 1, 2}, 2);
  CHECK(c.appended == 4);
  CHECK(c.doubled == 0);
  CHECK(c.removed == 2);
  CHECK(c.lhs() == c.rhs());

  // n = 1: removing the only element leaves the empty vector, one zero partition
  const auto d = identity_double_append({3}, 0);
  CHECK(d.removed == 1);
  CHECK(d.appended == 2);
  CHECK(d.holds);

  CHECK_THROWS_AS(identity_double_append({1, 2}, 2), DomainError);
}

TEST_CASE("corrected identity holds on random instances") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = oracle::random_vec(rng, 1, 8, 9);
    const std::size_t m = rng() % x.size();
    const auto id = identity_double_append(make(x), m);
    oracle::Vec dbl = x, app = x, rem = x;
    dbl[m] *= 2;
    app.push_back(x[m]);
    rem.erase(rem.begin() + static_cast<std::ptrdiff_t>(m));
    CHECK(id.doubled == oracle::zero_count(dbl));
    CHECK(id.appended == oracle::zero_count(app));
    CHECK(id.removed == oracle::zero_count(rem));
    CHECK(id.holds);
  }
}
