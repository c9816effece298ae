#include "psfree/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include "compensated.hpp"
#include "psfree/errors.hpp"
#include "psfree/exactpow.hpp"

namespace psfree {

namespace {

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

long double frac(long double x) { return x - std::floor(x); }

// sin(2 pi r) for r in [0, 1), exact at the quarter points.
long double sin_two_pi(long double r) {
  if (r == 0.0L || r == 0.5L) return 0.0L;
  if (r == 0.25L) return 1.0L;
  if (r == 0.75L) return -1.0L;
  return std::sin(kTwoPi * r);
}

// (cos 2 pi r, sin 2 pi r), exact at the quarter points
std::pair<long double, long double> cis_two_pi(long double r) {
  if (r == 0.0L) return {1.0L, 0.0L};
  if (r == 0.25L) return {0.0L, 1.0L};
  if (r == 0.5L) return {-1.0L, 0.0L};
  if (r == 0.75L) return {0.0L, -1.0L};
  // r is already reduced, so double trig loses nothing that matters against the sum's size
  double s, c;
  ::sincos(static_cast<double>(kTwoPi * r), &s, &c);
  return {c, s};
}

constexpr std::uint64_t kChunk = 8192;

}  // namespace

double psi(double x) { return static_cast<double>(frac(static_cast<long double>(x)) - 0.5L); }

double nearest_int_dist(double x) {
  const long double f = frac(static_cast<long double>(x));
  return static_cast<double>(std::min(f, 1.0L - f));
}

double psi_truncated(double x, std::uint64_t M) {
  if (M < 1) throw std::invalid_argument("psi_truncated: M must be >= 1");
  const long double xl = frac(static_cast<long double>(x));
  detail::CompensatedSum<long double> sum;
  for (std::uint64_t h = 1; h <= M; ++h) {
    const long double r = frac(static_cast<long double>(h) * xl);
    sum.add(sin_two_pi(r) / static_cast<long double>(h));
  }
  // + 0.0 turns the -0 of an all-zero sum into 0
  return static_cast<double>(-sum.value() / std::numbers::pi_v<long double>) + 0.0;
}

double phi_kd(std::uint64_t k, std::uint64_t d, const Exponent& c) {
  if (k == 0 || d == 0) throw std::invalid_argument("phi_kd: k and d must be positive");
  const long double m = static_cast<long double>(k) * static_cast<long double>(d) * static_cast<long double>(d);
  const long double g = c.gamma_value();
  const long double upper = frac(-std::pow(m + 1.0L, g)) - 0.5L;
  const long double lower = frac(-std::pow(m, g)) - 0.5L;
  return static_cast<double>(upper - lower);
}

ExpSumInstance::LRange ExpSumInstance::l_range() const {
  if (t == 0 || X < 2) throw std::invalid_argument("ExpSumInstance: requires t >= 1 and X >= 2");
  // l t^2 - 1 > (X/2)^c  <=>  l t^2 >= floor((X/2)^c) + 2;  l t^2 <= X^c + 2  <=>  l t^2 <= floor(X^c) + 2
  const std::uint64_t low = floor_pow_ratio(X, 2, c) + 2;
  const std::uint64_t high = floor_pow(X, c) + 2;
  const std::uint64_t t2 = t * t;
  return {(low + t2 - 1) / t2, high / t2};
}

long double ExpSumInstance::y_lo() const {
  const long double half = static_cast<long double>(X) / 2.0L;
  return (std::pow(half, c.value()) + 1.0L) / static_cast<long double>(t * t);
}

long double ExpSumInstance::y_hi() const {
  return (std::pow(static_cast<long double>(X), c.value()) + 2.0L) / static_cast<long double>(t * t);
}

std::complex<double> eval_H(const ExpSumInstance& inst) {
  if (inst.h == 0) throw std::invalid_argument("eval_H: h must be nonzero");
  const auto range = inst.l_range();
  if (range.empty()) return {0.0, 0.0};
  if (range.size() > kMaxExpSumTerms)
    throw RangeTooLarge("eval_H: " + std::to_string(range.size()) + " terms exceeds the limit");

  const long double g = inst.c.gamma_value();
  const std::uint64_t t2 = inst.t * inst.t;
  const auto h = static_cast<long double>(inst.h);
  const auto chunks = static_cast<std::int64_t>((range.size() + kChunk - 1) / kChunk);
  std::vector<long double> re(chunks), im(chunks);

#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < chunks; ++i) {
    const std::uint64_t a = range.first + static_cast<std::uint64_t>(i) * kChunk;
    const std::uint64_t b = std::min(range.last, a + kChunk - 1);
    detail::CompensatedSum<long double> sr, si;
    for (std::uint64_t l = a; l <= b; ++l) {
      // reduce y^gamma mod 1 before scaling by h so h's integer part never eats precision
      const long double y = static_cast<long double>(l * t2 - 1);
      const long double phase = frac(h * frac(std::pow(y, g)));
      const auto [cr, ci] = cis_two_pi(phase);
      sr.add(cr);
      si.add(ci);
    }
    re[i] = sr.value();
    im[i] = si.value();
  }
  detail::CompensatedSum<long double> sr, si;
  for (std::int64_t i = 0; i < chunks; ++i) {
    sr.add(re[i]);
    si.add(im[i]);
  }
  return {static_cast<double>(sr.value()), static_cast<double>(si.value())};
}

LambdaRange second_derivative_range(const ExpSumInstance& inst) {
  if (inst.l_range().empty()) throw std::invalid_argument("second_derivative_range: empty l-range");
  const long double g = inst.c.gamma_value();
  const long double t = static_cast<long double>(inst.t);
  const long double scale = std::fabs(static_cast<long double>(inst.h)) * g * (1.0L - g) * t * t * t * t;
  // y t^2 - 1 runs from (X/2)^c to X^c + 1; (.)^{gamma-2} is decreasing
  const long double lo_arg = std::pow(static_cast<long double>(inst.X) / 2.0L, inst.c.value());
  const long double hi_arg = std::pow(static_cast<long double>(inst.X), inst.c.value()) + 1.0L;
  return {static_cast<double>(scale * std::pow(hi_arg, g - 2.0L)),
          static_cast<double>(scale * std::pow(lo_arg, g - 2.0L))};
}

double vdc_bound(double length, double lam) {
  if (!(length > 0) || !(lam > 0)) throw std::invalid_argument("vdc_bound: requires length > 0 and lam > 0");
  const double root = std::sqrt(lam);
  return length * root + 1.0 / root;
}

VdcCheck check_vdc(const ExpSumInstance& inst) {
  VdcCheck out;
  out.terms = inst.l_range().size();
  if (out.terms == 0) throw std::invalid_argument("check_vdc: empty l-range");
  out.abs_h = std::abs(eval_H(inst));
  out.lambda = second_derivative_range(inst);
  out.bound = vdc_bound(static_cast<double>(out.terms), out.lambda.lambda_min);
  out.ratio = out.abs_h / out.bound;
  const double ah = std::fabs(static_cast<double>(inst.h));
  const double x = static_cast<double>(inst.X);
  const double t2 = static_cast<double>(inst.t * inst.t);
  out.hest_bound = std::sqrt(ah) * std::sqrt(x) + std::pow(x, static_cast<double>(inst.c.value()) - 0.5) / (std::sqrt(ah) * t2);
  out.hest_ratio = out.abs_h / out.hest_bound;
  return out;
}

std::vector<ExpSumInstance> sample_instances(std::uint64_t seed, std::size_t count, const Exponent& c,
                                             std::uint64_t x_min, std::uint64_t x_max, std::uint64_t t_max,
                                             std::int64_t h_max) {
  if (x_min < 2 || x_max < x_min || t_max < 1 || h_max < 1)
    throw std::invalid_argument("sample_instances: invalid ranges");
  // plain modular reduction keeps the stream identical across standard libraries
  std::mt19937_64 rng(seed);
  std::vector<ExpSumInstance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ExpSumInstance inst;
    inst.c = c;
    inst.t = 1 + rng() % t_max;
    const auto magnitude = static_cast<std::int64_t>(1 + rng() % static_cast<std::uint64_t>(h_max));
    inst.h = (rng() & 1) ? magnitude : -magnitude;
    inst.X = x_min + rng() % (x_max - x_min + 1);
    out.push_back(inst);
  }
  return out;
}

VdcSurvey survey_vdc(std::uint64_t seed, std::size_t count, const Exponent& c, std::uint64_t x_min,
                     std::uint64_t x_max) {
  VdcSurvey out;
  out.seed = seed;
  out.instances = count;
  for (const auto& inst : sample_instances(seed, count, c, x_min, x_max)) {
    const auto check = check_vdc(inst);
    out.max_ratio = std::max(out.max_ratio, check.ratio);
    out.max_hest_ratio = std::max(out.max_hest_ratio, check.hest_ratio);
    if (check.abs_h > static_cast<double>(check.terms)) out.within_triangle = false;
  }
  return out;
}

PsiTruncationCheck psi_truncation_check(std::uint64_t M, std::size_t grid, double exclusion, double constant) {
  PsiTruncationCheck out;
  out.M = M;
  const double m = static_cast<double>(M);
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid);
    const double dist = nearest_int_dist(x);
    if (dist < exclusion) continue;
    ++out.points;
    const double err = std::fabs(psi(x) - psi_truncated(x, M));
    out.max_scaled_error = std::max(out.max_scaled_error, err * m * dist);
    if (err > constant / (m * dist)) out.within_bound = false;
  }
  out.at_half = psi_truncated(0.5, M);
  return out;
}

double z_choice(std::uint64_t X, const Exponent& c) {
  const long double e = (2.0L * c.value() - 1.0L) / 4.0L;
  return static_cast<double>(std::pow(static_cast<long double>(X), e));
}

double M_choice(std::uint64_t X, std::uint64_t d, std::uint64_t t, const Exponent& c) {
  if (X < 3 || d < 1 || t < 1) throw std::invalid_argument("M_choice: requires X >= 3 and d, t >= 1");
  return z_choice(X, c) * std::log(static_cast<double>(X)) / (static_cast<double>(d) * static_cast<double>(t));
}

double bM_envelope(std::int64_t h, double M) {
  if (!(M >= 2)) throw std::invalid_argument("bM_envelope: M must be >= 2");
  const double flat = std::log(M) / M;
  if (h == 0) return flat;
  const double hd = static_cast<double>(h);
  return std::min(flat, M / (hd * hd));
}

}  // namespace psfree
