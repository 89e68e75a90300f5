#include "zpart/spectral.hpp"

#include <mpfr.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "zpart/counting.hpp"
#include "zpart/errors.hpp"

namespace zpart {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class KahanSum {
 public:
  void add(double v) {
    const double y = v - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// RAII wrapper for an MPFR float.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// x mod N for arbitrary-precision x.
std::vector<std::uint64_t> residues(const PartitionInstance& inst, std::uint64_t modulus) {
  std::vector<std::uint64_t> out;
  out.reserve(inst.size());
  const mpz_class n(static_cast<unsigned long>(modulus));
  for (const auto& x : inst.numbers()) {
    mpz_class r = x % n;
    out.push_back(mpz_get_ui(r.get_mpz_t()));
  }
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % modulus);
}

// Angle 2 pi r / N for an exactly reduced phase r in [0, N).
double phase(std::uint64_t r, std::uint64_t modulus) {
  return kTwoPi * static_cast<double>(r) / static_cast<double>(modulus);
}

void check_quadrature_guard(const PartitionInstance& inst, std::uint64_t nodes, const Limits& limits) {
  if (inst.size() > limits.quadrature_max_n) {
    throw LimitError("n = " + std::to_string(inst.size()) + " exceeds the floating-point quadrature guard of " +
                     std::to_string(limits.quadrature_max_n) + "; use an exact counter");
  }
  if (nodes == 0) throw DomainError("node count must be at least 1");
  if (nodes > limits.quadrature_max_nodes) {
    throw LimitError("quadrature needs " + std::to_string(nodes) + " nodes, above the cap of " +
                     std::to_string(limits.quadrature_max_nodes));
  }
}

std::uint64_t exact_node_count(const PartitionInstance& inst, std::uint64_t oversample) {
  const mpz_class nodes = (inst.total() + 1) * static_cast<unsigned long>(oversample);
  if (mpz_sizeinbase(nodes.get_mpz_t(), 2) > 63) {
    throw LimitError("instance total " + inst.total().get_str() + " is too large for exact quadrature");
  }
  return mpz_get_ui(nodes.get_mpz_t());
}

QuadratureResult finish(double scaled_sum, std::size_t n, std::uint64_t nodes) {
  QuadratureResult out;
  out.node_count = nodes;
  out.raw = std::ldexp(scaled_sum, static_cast<int>(n)) / static_cast<double>(nodes);
  const double nearest = std::nearbyint(out.raw);
  out.rounded = mpz_class(nearest);
  out.residual = std::fabs(out.raw - nearest);
  return out;
}

// psi(m / N) from exact residues r_k = x_k mod N.
double psi_at_node(const std::vector<std::uint64_t>& r, std::uint64_t m, std::uint64_t nodes) {
  double p = 1.0;
  for (std::uint64_t rk : r) p *= std::cos(phase(mulmod(rk, m, nodes), nodes));
  return p;
}

}  // namespace

PsiEvaluation psi_eval(const PartitionInstance& inst, const mpq_class& t, unsigned precision_bits) {
  if (precision_bits < 16) throw DomainError("precision_bits must be at least 16");
  mpq_class tc = t;
  tc.canonicalize();
  const mpfr_prec_t work = static_cast<mpfr_prec_t>(precision_bits) + 64;

  Mpfr two_pi(work), angle(work), cosine(work);
  mpfr_const_pi(two_pi.get(), MPFR_RNDN);
  mpfr_mul_2ui(two_pi.get(), two_pi.get(), 1, MPFR_RNDN);

  mpz_class acc;
  mpz_setbit(acc.get_mpz_t(), precision_bits);  // 1.0
  for (const auto& x : inst.numbers()) {
    // frac(x t) = ((x * num) mod den) / den, exact.
    mpz_class num = x * tc.get_num();
    mpz_class rem;
    mpz_fdiv_r(rem.get_mpz_t(), num.get_mpz_t(), tc.get_den_mpz_t());
    const mpq_class frac(rem, tc.get_den());

    mpfr_set_q(angle.get(), frac.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(angle.get(), angle.get(), two_pi.get(), MPFR_RNDN);
    mpfr_cos(cosine.get(), angle.get(), MPFR_RNDN);
    mpfr_mul_2ui(cosine.get(), cosine.get(), precision_bits, MPFR_RNDN);
    mpz_class factor;
    mpfr_get_z(factor.get_mpz_t(), cosine.get(), MPFR_RNDZ);

    acc *= factor;
    mpz_tdiv_q_2exp(acc.get_mpz_t(), acc.get_mpz_t(), precision_bits);
  }

  PsiEvaluation out;
  out.t = tc;
  out.precision_bits = precision_bits;
  out.fixed_point = acc;
  out.value = mpz_get_d(acc.get_mpz_t());
  out.value = std::ldexp(out.value, -static_cast<int>(precision_bits));
  out.error_bound = static_cast<double>(inst.size()) * std::ldexp(1.0, 1 - static_cast<int>(precision_bits));
  return out;
}

PsiEvaluation psi_eval(const PartitionInstance& inst, double t, unsigned precision_bits) {
  if (!std::isfinite(t)) throw DomainError("evaluation point must be finite");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), t);  // exact: doubles are dyadic
  return psi_eval(inst, q, precision_bits);
}

std::complex<double> psi_complex(const PartitionInstance& inst, std::complex<double> z) {
  std::complex<double> p = 1.0;
  for (const auto& x : inst.numbers()) p *= std::cos(x.get_d() * z);
  return p;
}

Count count_zero_cosine_route(const PartitionInstance& inst) {
  const std::size_t n = inst.size();
  // The integer part of a double near 2^(n total) is exact only while n total stays well under 53.
  if (!inst.small_total() || n * *inst.small_total() > 40) {
    throw LimitError("cosine route is a double-precision check for tiny instances only");
  }
  const PartitionInstance scaled = inst.scaled(static_cast<unsigned long>(n));
  double sum = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    const std::complex<double> z(kTwoPi * static_cast<double>(m) / static_cast<double>(n), std::log(2.0));
    sum += psi_complex(scaled, z).real();
  }
  const double value = std::ldexp(sum, static_cast<int>(n)) / static_cast<double>(n);
  mpz_class c(std::floor(value));
  mpz_fdiv_r_2exp(c.get_mpz_t(), c.get_mpz_t(), n);
  return c;
}

QuadratureResult trapezoid_count(const PartitionInstance& inst, std::uint64_t nodes, const Limits& limits) {
  check_quadrature_guard(inst, nodes, limits);
  const auto r = residues(inst, nodes);
  KahanSum sum;
  for (std::uint64_t m = 1; m <= nodes; ++m) sum.add(psi_at_node(r, m, nodes));
  return finish(sum.value(), inst.size(), nodes);
}

QuadratureResult count_zero_quadrature(const PartitionInstance& inst, unsigned oversample, const Limits& limits) {
  if (oversample == 0) throw DomainError("oversample must be at least 1");
  return trapezoid_count(inst, exact_node_count(inst, oversample), limits);
}

QuadratureResult residue_count_spectral(const PartitionInstance& inst, std::uint64_t modulus, std::uint64_t j,
                                        const Limits& limits) {
  if (j >= modulus) throw DomainError("remainder must satisfy 0 <= j < N");
  check_quadrature_guard(inst, modulus, limits);
  const auto r = residues(inst, modulus);
  KahanSum sum;
  for (std::uint64_t m = 1; m <= modulus; ++m) {
    sum.add(std::cos(phase(mulmod(j, m, modulus), modulus)) * psi_at_node(r, m, modulus));
  }
  return finish(sum.value(), inst.size(), modulus);
}

VarianceReport variance_total(const PartitionInstance& inst, bool verify, const Limits& limits) {
  VarianceReport out;
  for (const auto& x : inst.numbers()) out.sum_squares += x * x;
  if (!verify) return out;
  const SizeSpectrum spectrum = size_spectrum(inst, limits);
  mpz_class second;
  for (std::int64_t u = -spectrum.total(); u <= spectrum.total(); u += 2) {
    const mpz_class uu(static_cast<long>(u));
    second += uu * uu * spectrum.at(u);
  }
  mpz_class den;
  mpz_setbit(den.get_mpz_t(), inst.size());
  out.spectrum_variance = mpq_class(second, den);
  out.spectrum_variance.canonicalize();
  out.verified = true;
  out.agree = out.spectrum_variance == mpq_class(out.sum_squares);
  return out;
}

QuadratureResult variance_divisible(const PartitionInstance& inst, std::uint64_t modulus, const Limits& limits) {
  check_quadrature_guard(inst, modulus, limits);
  const auto r = residues(inst, modulus);
  std::vector<double> x;
  double sum_sq = 0.0;
  for (const auto& v : inst.numbers()) {
    x.push_back(v.get_d());
    sum_sq += x.back() * x.back();
  }
  // psi''(t) = 4 pi^2 (2 e2(t) - sum x^2 psi(t)), where e2 is the second-order
  // coefficient of prod_k (cos_k + eps x_k sin_k).
  KahanSum sum;
  for (std::uint64_t m = 1; m <= modulus; ++m) {
    double p0 = 1.0, p1 = 0.0, p2 = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double a = phase(mulmod(r[k], m, modulus), modulus);
      const double c = std::cos(a);
      const double s = x[k] * std::sin(a);
      p2 = p2 * c + p1 * s;
      p1 = p1 * c + p0 * s;
      p0 = p0 * c;
    }
    sum.add(sum_sq * p0 - 2.0 * p2);
  }
  // -2^n / (4 pi^2 N^3) sum psi'' = 2^n / N^3 sum (sum_sq psi - 2 e2)
  const double n_d = static_cast<double>(modulus);
  return finish(sum.value() / (n_d * n_d), inst.size(), modulus);
}

Count variance_divisible_exact(const PartitionInstance& inst, std::uint64_t modulus, const Limits& limits) {
  if (modulus == 0) throw DomainError("modulus must be at least 1");
  const SizeSpectrum spectrum = size_spectrum(inst, limits);
  const auto n = static_cast<std::int64_t>(modulus);
  Count out;
  for (std::int64_t u = -spectrum.total(); u <= spectrum.total(); ++u) {
    if (u % n != 0) continue;
    const mpz_class q(static_cast<long>(u / n));
    out += q * q * spectrum.at(u);
  }
  return out;
}

QuadratureResult sign_correlation(const PartitionInstance& inst, std::size_t i, std::size_t j, const Limits& limits) {
  if (inst.size() < 2) throw DomainError("sign correlation needs at least two elements");
  if (i >= inst.size() || j >= inst.size()) throw DomainError("sign index out of range");
  if (i == j) throw DomainError("sign correlation needs two distinct indices");
  const std::uint64_t nodes = exact_node_count(inst, 1);
  check_quadrature_guard(inst, nodes, limits);
  const auto r = residues(inst, nodes);
  KahanSum sum;
  for (std::uint64_t m = 1; m <= nodes; ++m) {
    double p = 1.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double a = phase(mulmod(r[k], m, nodes), nodes);
      p *= (k == i || k == j) ? std::sin(a) : std::cos(a);
    }
    sum.add(-p);
  }
  return finish(sum.value(), inst.size(), nodes);
}

double gaussian_limit_constant(const PartitionInstance& inst) {
  mpz_class sum_sq;
  for (const auto& x : inst.numbers()) sum_sq += x * x;
  return 1.0 / std::sqrt(8.0 * std::numbers::pi * sum_sq.get_d());
}

ReplicationReport replication_convergence(const PartitionInstance& inst, std::uint64_t copies) {
  if (copies == 0) throw DomainError("copies must be at least 1");
  mpz_class g = inst[0];
  for (const auto& x : inst.numbers()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  std::vector<double> reduced;
  for (const auto& x : inst.numbers()) reduced.push_back(mpz_class(x / g).get_d());

  // With t = sqrt(N) u / gcd the integral is sqrt(N)/gcd times the integral of
  // prod cos^N(2 pi (x_k / gcd) u) over u in [0, 1/4].
  const double exponent = static_cast<double>(copies);
  auto f = [&](double u) {
    double p = 1.0;
    for (double x : reduced) p *= std::pow(std::cos(kTwoPi * x * u), exponent);
    return p;
  };
  const double b = 0.25;
  std::uint64_t intervals = 16;
  double h = b / static_cast<double>(intervals);
  KahanSum base;
  base.add(0.5 * (f(0.0) + f(b)));
  for (std::uint64_t k = 1; k < intervals; ++k) base.add(f(static_cast<double>(k) * h));
  double interior = base.value();
  double estimate = interior * h;
  for (int level = 0; level < 20; ++level) {
    KahanSum mids;
    for (std::uint64_t k = 0; k < intervals; ++k) mids.add(f((static_cast<double>(k) + 0.5) * h));
    interior += mids.value();
    intervals *= 2;
    h *= 0.5;
    const double next = interior * h;
    const bool converged = std::fabs(next - estimate) <= 1e-10 * std::fabs(next) && level >= 3;
    estimate = next;
    if (converged) break;
  }

  ReplicationReport out;
  out.copies = copies;
  const double scale = std::sqrt(exponent) / g.get_d();
  out.integral_value = estimate * scale;
  out.upper_limit = b * scale;
  out.limit_constant = gaussian_limit_constant(inst);
  out.abs_error = std::fabs(out.integral_value - out.limit_constant);
  return out;
}

ErrorBoundReport trapezoid_error_bound(double max_modulus, double radius, std::uint64_t nodes) {
  if (!(max_modulus > 0.0) || !std::isfinite(max_modulus)) throw DomainError("M must be positive and finite");
  if (!(radius > 1.0) || !std::isfinite(radius)) throw DomainError("r must exceed 1");
  if (nodes == 0) throw DomainError("node count must be at least 1");
  ErrorBoundReport out{max_modulus, radius, nodes, 0.0};
  const double denom = std::expm1(static_cast<double>(nodes) * std::log(radius));
  out.bound = 4.0 * std::numbers::pi * max_modulus / denom;
  return out;
}

LineIntegral classify_line_integral(const PartitionInstance& inst, const Limits& limits) {
  return sgn(count_zero_exact(inst, limits)) > 0 ? LineIntegral::Infinite : LineIntegral::Zero;
}

const char* to_string(LineIntegral v) {
  return v == LineIntegral::Infinite ? "infinite" : "zero";
}

}  // namespace zpart
