#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "psfree/exponent.hpp"

namespace psfree {

/// Sawtooth {x} - 1/2, in [-1/2, 1/2).
double psi(double x);
/// ||x||: distance to the nearest integer, in [0, 1/2].
double nearest_int_dist(double x);
/// -sum_{h=1}^{M} sin(2 pi h x) / (pi h). Exactly 0 at integers and half-integers.
double psi_truncated(double x, std::uint64_t M);

/// psi(-(kd^2 + 1)^gamma) - psi(-(kd^2)^gamma), powers in extended precision.
double phi_kd(std::uint64_t k, std::uint64_t d, const Exponent& c);

/// H(t, h) = sum over l in (((X/2)^c + 1)/t^2, (X^c + 2)/t^2] of e(h (l t^2 - 1)^gamma).
struct ExpSumInstance {
  std::uint64_t t = 1;
  std::int64_t h = 1;
  std::uint64_t X = 1000;
  Exponent c = Exponent::rational(11, 10);

  struct LRange {
    std::uint64_t first = 1;  // inclusive
    std::uint64_t last = 0;   // inclusive
    std::uint64_t size() const { return last >= first ? last - first + 1 : 0; }
    bool empty() const { return last < first; }
  };

  /// Integer l in the summation range, with both ends decided exactly.
  LRange l_range() const;
  /// Real endpoints ((X/2)^c + 1)/t^2 and (X^c + 2)/t^2.
  long double y_lo() const;
  long double y_hi() const;
};

inline constexpr std::uint64_t kMaxExpSumTerms = 1'000'000'000;

/// Throws RangeTooLarge past kMaxExpSumTerms terms. Chunked in parallel with
/// compensated accumulation; the chunking is fixed, so results do not depend
/// on the thread count.
std::complex<double> eval_H(const ExpSumInstance& inst);

struct LambdaRange {
  double lambda_min = 0;
  double lambda_max = 0;
};

/// min/max of |f''(y)| = |h| gamma (1 - gamma) t^4 (y t^2 - 1)^{gamma - 2} over
/// the real l-range; f'' is monotone so the endpoints suffice.
LambdaRange second_derivative_range(const ExpSumInstance& inst);

/// length * sqrt(lam) + 1 / sqrt(lam).
double vdc_bound(double length, double lam);

struct VdcCheck {
  double abs_h = 0;          // |H|
  std::uint64_t terms = 0;
  LambdaRange lambda;
  double bound = 0;          // vdc_bound(terms, lambda_min)
  double ratio = 0;          // abs_h / bound
  double hest_bound = 0;     // |h|^{1/2} X^{1/2} + |h|^{-1/2} t^{-2} X^{c - 1/2}
  double hest_ratio = 0;
};

VdcCheck check_vdc(const ExpSumInstance& inst);

/// Seeded instances with 1 <= t <= t_max, 1 <= |h| <= h_max, X uniform in [x_min, x_max].
std::vector<ExpSumInstance> sample_instances(std::uint64_t seed, std::size_t count, const Exponent& c,
                                             std::uint64_t x_min, std::uint64_t x_max, std::uint64_t t_max = 10,
                                             std::int64_t h_max = 50);

struct VdcSurvey {
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  double max_ratio = 0;
  double max_hest_ratio = 0;
  bool within_triangle = true;  // |H| <= #terms for every instance
};

/// check_vdc over sample_instances(seed, count, c, x_min, x_max).
VdcSurvey survey_vdc(std::uint64_t seed, std::size_t count, const Exponent& c, std::uint64_t x_min,
                     std::uint64_t x_max);

struct PsiTruncationCheck {
  std::uint64_t M = 0;
  std::size_t points = 0;       // grid points outside the excluded neighbourhoods
  double max_scaled_error = 0;  // max |psi - psi_M| * M * ||x||
  bool within_bound = true;     // |psi - psi_M| <= constant / (M ||x||) everywhere
  double at_half = 0;           // psi_truncated(0.5, M)
};

/// Grid x = i / grid for i in [0, grid), skipping ||x|| < exclusion.
PsiTruncationCheck psi_truncation_check(std::uint64_t M, std::size_t grid = 10000, double exclusion = 1e-3,
                                        double constant = 4.0);

/// X^{(2c-1)/4}.
double z_choice(std::uint64_t X, const Exponent& c);
/// X^{(2c-1)/4} log X / (d t).
double M_choice(std::uint64_t X, std::uint64_t d, std::uint64_t t, const Exponent& c);
/// min(log M / M, M / h^2) for h != 0, log M / M for h = 0. Requires M >= 2.
double bM_envelope(std::int64_t h, double M);

}  // namespace psfree
