#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

#include "zpart/instance.hpp"

namespace zpart {

// psi(t) = prod_k cos(2 pi x_k t), the characteristic function of the
// partition size under uniform random signs, in period-1 units.

struct PsiEvaluation {
  double value = 0.0;
  mpq_class t;
  unsigned precision_bits = 0;
  mpz_class fixed_point;     // value * 2^precision_bits, truncated
  double error_bound = 0.0;  // n * 2^(1 - precision_bits)
};

/// Fixed-point evaluation of psi at rational t.
///
/// Each phase x_k t mod 1 is reduced exactly in rational arithmetic, the
/// cosine is taken with MPFR and truncated to `precision_bits` fractional
/// bits, and the running product is truncated back to `precision_bits` after
/// every multiplication. Factors lie in [-1, 1], so the truncation errors add
/// rather than compound.
PsiEvaluation psi_eval(const PartitionInstance& inst, const mpq_class& t, unsigned precision_bits);
PsiEvaluation psi_eval(const PartitionInstance& inst, double t, unsigned precision_bits);

// prod_k cos(x_k z) at complex z, without the 2 pi scaling. Double precision, small instances only.
std::complex<double> psi_complex(const PartitionInstance& inst, std::complex<double> z);

// Zero count through the imaginary-shift cosine route (2^n / n) sum_m psi over the
// scaled instance; double precision, so only for tiny instances.
Count count_zero_cosine_route(const PartitionInstance& inst);

struct QuadratureResult {
  double raw = 0.0;
  Count rounded;
  std::uint64_t node_count = 0;
  double residual = 0.0;  // |raw - rounded|

  bool reliable() const { return residual < 0.25; }
};

// (2^n / N) sum_{m=1..N} psi(m / N) with compensated summation.
// For N <= total this is the aliased sum of c_{uN} over all u.
QuadratureResult trapezoid_count(const PartitionInstance& inst, std::uint64_t nodes, const Limits& limits = {});

// trapezoid_count with N = oversample * (total + 1), which integrates the degree-total
// trigonometric polynomial exactly; `rounded` is the zero count when reliable().
QuadratureResult count_zero_quadrature(const PartitionInstance& inst, unsigned oversample = 1,
                                       const Limits& limits = {});

/// (2^n / N) sum_m e^(2 pi i j m / N) psi(m / N).
///
/// The phase selects sizes congruent to -j mod N. Sizes are symmetric under
/// sigma -> -sigma, so the count also equals the class of +j.
QuadratureResult residue_count_spectral(const PartitionInstance& inst, std::uint64_t modulus, std::uint64_t j,
                                        const Limits& limits = {});

struct VarianceReport {
  mpz_class sum_squares;        // sum_k x_k^2
  mpq_class spectrum_variance;  // 2^-n sum_sigma <x, sigma>^2 from the size spectrum
  bool verified = false;        // spectrum side computed
  bool agree = false;
};

VarianceReport variance_total(const PartitionInstance& inst, bool verify = true, const Limits& limits = {});

/// sum_u u^2 c_{uN}: the second moment of the sizes divisible by N, in units of N.
///
/// Computed from the second derivative of psi at the N roots of unity,
/// -2^n / (4 pi^2 N^3) sum_m psi''(m / N), with psi'' expanded analytically.
QuadratureResult variance_divisible(const PartitionInstance& inst, std::uint64_t modulus, const Limits& limits = {});

// The same moment straight from the exact size spectrum.
Count variance_divisible_exact(const PartitionInstance& inst, std::uint64_t modulus, const Limits& limits = {});

/// sum over zero partitions of sigma_i sigma_j, as
/// -2^n integral_0^1 sin(2 pi x_i t) sin(2 pi x_j t) prod_{k != i,j} cos(2 pi x_k t) dt
/// on total + 1 trapezoid nodes (exact for the trigonometric polynomial).
QuadratureResult sign_correlation(const PartitionInstance& inst, std::size_t i, std::size_t j,
                                  const Limits& limits = {});

// 1 / sqrt(8 pi sum x_k^2).
double gaussian_limit_constant(const PartitionInstance& inst);

struct ReplicationReport {
  std::uint64_t copies = 0;
  double integral_value = 0.0;
  double limit_constant = 0.0;
  double abs_error = 0.0;
  double upper_limit = 0.0;  // sqrt(N) / (4 gcd(x))
};

/// Integral of prod_k cos^N(2 pi x_k t / sqrt(N)) over the half-peak at the
/// origin, t in [0, sqrt(N) / (4 gcd)], against its Gaussian limit.
///
/// The integrand has a full peak at every t = sqrt(N) m / (2 gcd); the upper
/// limit stops halfway to the first of them.
ReplicationReport replication_convergence(const PartitionInstance& inst, std::uint64_t copies);

struct ErrorBoundReport {
  double max_modulus = 0.0;  // M
  double radius = 0.0;       // r
  std::uint64_t nodes = 0;   // N
  double bound = 0.0;        // 4 pi M / (r^N - 1)
};

// Trapezoid error bound for an integrand analytic and bounded by M on the annulus 1/r <= |z| <= r.
ErrorBoundReport trapezoid_error_bound(double max_modulus, double radius, std::uint64_t nodes);

enum class LineIntegral { Infinite, Zero };

// The integral of prod cos(x_k t) over [0, inf) diverges exactly when a zero partition exists.
LineIntegral classify_line_integral(const PartitionInstance& inst, const Limits& limits = {});

const char* to_string(LineIntegral v);

}  // namespace zpart
