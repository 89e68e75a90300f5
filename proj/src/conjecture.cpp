#include "zpart/conjecture.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "zpart/counting.hpp"
#include "zpart/errors.hpp"
#include "zpart/spectral.hpp"

namespace zpart {

Count conjectured_bound(unsigned n) {
  if (n == 0) throw DomainError("n must be at least 1");
  Count c;
  if (n % 2 == 0) {
    mpz_bin_uiui(c.get_mpz_t(), n, n / 2);
  } else if (n >= 3) {
    mpz_bin_uiui(c.get_mpz_t(), n - 1, (n - 3) / 2);
    c *= 2;
  }
  return c;
}

PartitionInstance extremal_vector(unsigned n) {
  if (n == 0) throw DomainError("n must be at least 1");
  std::vector<mpz_class> x(n, 1);
  if (n % 2 == 1) x.back() = 2;
  return PartitionInstance(std::move(x));
}

namespace {

constexpr std::uint64_t kCrosscheckStride = 20;  // 5% quadrature subsample

class Scanner {
 public:
  explicit Scanner(ScanReport& report) : report_(report) {}

  void begin_slice(unsigned n) {
    ScanSlice slice;
    slice.n = n;
    slice.bound = conjectured_bound(n);
    report_.slices.push_back(std::move(slice));
  }

  void check(const std::vector<std::uint64_t>& x) {
    const PartitionInstance inst = PartitionInstance::from_u64(x);
    const Count count = count_zero_dp(inst);
    ScanSlice& slice = report_.slices.back();

    if (report_.instances_checked % kCrosscheckStride == 0) {
      const QuadratureResult q = count_zero_quadrature(inst);
      if (!q.reliable() || q.rounded != count) {
        throw Error("quadrature disagrees with DP on " + inst.to_string() + ": " + q.rounded.get_str() + " vs " +
                    count.get_str());
      }
      ++report_.quadrature_crosschecks;
    }
    ++report_.instances_checked;
    ++slice.instances;

    if (!slice.witness || count > slice.max_count) {
      slice.max_count = count;
      slice.witness = inst;
    }
    if (sgn(slice.bound) > 0) {
      mpq_class ratio(count, slice.bound);
      ratio.canonicalize();
      if (!report_.witness || ratio > report_.max_ratio) {
        report_.max_ratio = ratio;
        report_.witness = inst;
      }
    }
    if (count > slice.bound) {
      const Count confirmed = count_zero_oracle(inst);
      if (confirmed != count) {
        throw Error("DP count " + count.get_str() + " on " + inst.to_string() + " refuted by oracle count " +
                    confirmed.get_str());
      }
      report_.counterexamples.push_back({inst, count, slice.bound});
    }
  }

 private:
  ScanReport& report_;
};

}  // namespace

ScanReport scan_exhaustive(unsigned n_min, unsigned n_max, std::uint64_t element_bound, std::uint64_t budget) {
  if (n_min < 1 || n_min > n_max) throw DomainError("invalid n range");
  if (n_max > 40) throw DomainError("n above 40 is outside the exhaustive scan's reach");
  if (element_bound < 1) throw DomainError("element bound must be at least 1");
  ScanReport report;
  report.n_min = n_min;
  report.n_max = n_max;
  report.element_bound = element_bound;
  Scanner scanner(report);

  for (unsigned n = n_min; n <= n_max && !report.partial; ++n) {
    scanner.begin_slice(n);
    std::vector<std::uint64_t> x(n, 1);
    while (true) {
      std::uint64_t g = 0;
      for (auto v : x) g = std::gcd(g, v);
      if (g == 1) {
        if (report.instances_checked >= budget) {
          report.partial = true;
          break;
        }
        scanner.check(x);
      }
      // Next nondecreasing vector in lexicographic order.
      std::size_t k = n;
      while (k > 0 && x[k - 1] == element_bound) --k;
      if (k == 0) break;
      const std::uint64_t v = x[k - 1] + 1;
      std::fill(x.begin() + static_cast<std::ptrdiff_t>(k - 1), x.end(), v);
    }
  }
  return report;
}

ScanReport scan_random(unsigned n, std::uint64_t element_bound, std::uint64_t samples, std::uint64_t seed) {
  if (n < 1 || n > 40) throw DomainError("n must be in [1, 40]");
  if (element_bound < 1) throw DomainError("element bound must be at least 1");
  ScanReport report;
  report.n_min = n;
  report.n_max = n;
  report.element_bound = element_bound;
  if (samples == 0) return report;
  Scanner scanner(report);
  scanner.begin_slice(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, element_bound);
  std::vector<std::uint64_t> x(n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& v : x) v = pick(rng);
    std::sort(x.begin(), x.end());
    scanner.check(x);
  }
  return report;
}

void merge_into(ScanReport& into, const ScanReport& from) {
  if (into.slices.empty() && into.instances_checked == 0) {
    into.n_min = from.n_min;
    into.n_max = from.n_max;
  } else {
    into.n_min = std::min(into.n_min, from.n_min);
    into.n_max = std::max(into.n_max, from.n_max);
  }
  into.element_bound = std::max(into.element_bound, from.element_bound);
  into.instances_checked += from.instances_checked;
  into.quadrature_crosschecks += from.quadrature_crosschecks;
  if (from.witness && (!into.witness || from.max_ratio > into.max_ratio)) {
    into.max_ratio = from.max_ratio;
    into.witness = from.witness;
  }
  into.counterexamples.insert(into.counterexamples.end(), from.counterexamples.begin(), from.counterexamples.end());
  into.slices.insert(into.slices.end(), from.slices.begin(), from.slices.end());
  into.partial = into.partial || from.partial;
}

}  // namespace zpart
