#include "psfree/constants.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "compensated.hpp"
#include "mpfr_util.hpp"
#include "psfree/sieve.hpp"

namespace psfree {

namespace {

using detail::Mpfr;

constexpr mpfr_prec_t kBits = 256;
constexpr int kDigits = 40;
constexpr int kChunks = 64;

// Builds a RigorousValue from an enclosure [lo, hi]: the decimal value is the
// rounded midpoint and the bound covers both ends plus the decimal rounding.
RigorousValue from_enclosure(mpfr_srcptr lo, mpfr_srcptr hi, std::string derivation) {
  Mpfr mid(kBits);
  mpfr_add(mid.get(), lo, hi, MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  RigorousValue out;
  out.value = detail::to_decimal(mid.get(), kDigits);
  out.derivation = std::move(derivation);

  Mpfr v_lo(2 * kBits), v_hi(2 * kBits), gap_lo(2 * kBits), gap_hi(2 * kBits);
  mpfr_set_str(v_lo.get(), out.value.c_str(), 10, MPFR_RNDD);
  mpfr_set_str(v_hi.get(), out.value.c_str(), 10, MPFR_RNDU);
  mpfr_sub(gap_lo.get(), v_hi.get(), lo, MPFR_RNDU);
  mpfr_sub(gap_hi.get(), hi, v_lo.get(), MPFR_RNDU);
  mpfr_max(gap_lo.get(), gap_lo.get(), gap_hi.get(), MPFR_RNDU);
  out.error_bound = mpfr_get_d(gap_lo.get(), MPFR_RNDU);
  return out;
}

// Encloses prod_{p <= P} (1 - weight/p^2) times a tail factor in
// [exp(-tail), 1]. Primes are split into a fixed number of chunks so the
// result does not depend on the thread count.
RigorousValue euler_product(std::uint64_t cutoff, unsigned long weight, mpfr_srcptr tail, const std::string& what) {
  const auto primes = primes_up_to(cutoff);
  const std::size_t n = primes.size();
  std::vector<std::unique_ptr<Mpfr>> chunk_lo, chunk_hi;
  for (int c = 0; c < kChunks; ++c) {
    chunk_lo.push_back(std::make_unique<Mpfr>(kBits));
    chunk_hi.push_back(std::make_unique<Mpfr>(kBits));
  }

#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < kChunks; ++c) {
    const std::size_t begin = n * static_cast<std::size_t>(c) / kChunks;
    const std::size_t end = n * static_cast<std::size_t>(c + 1) / kChunks;
    mpfr_ptr lo = chunk_lo[c]->get();
    mpfr_ptr hi = chunk_hi[c]->get();
    Mpfr x(kBits), f(kBits);
    mpfr_set_ui(lo, 1, MPFR_RNDN);
    mpfr_set_ui(hi, 1, MPFR_RNDN);
    for (std::size_t i = begin; i < end; ++i) {
      const unsigned long p2 = static_cast<unsigned long>(primes[i]) * primes[i];
      // lower factor: 1 - (weight/p^2 rounded up), rounded down
      mpfr_set_ui(x.get(), weight, MPFR_RNDN);
      mpfr_div_ui(x.get(), x.get(), p2, MPFR_RNDU);
      mpfr_ui_sub(f.get(), 1, x.get(), MPFR_RNDD);
      mpfr_mul(lo, lo, f.get(), MPFR_RNDD);
      mpfr_set_ui(x.get(), weight, MPFR_RNDN);
      mpfr_div_ui(x.get(), x.get(), p2, MPFR_RNDD);
      mpfr_ui_sub(f.get(), 1, x.get(), MPFR_RNDU);
      mpfr_mul(hi, hi, f.get(), MPFR_RNDU);
    }
  }

  Mpfr lo(kBits), hi(kBits), tail_factor(kBits);
  mpfr_set_ui(lo.get(), 1, MPFR_RNDN);
  mpfr_set_ui(hi.get(), 1, MPFR_RNDN);
  for (int c = 0; c < kChunks; ++c) {
    mpfr_mul(lo.get(), lo.get(), chunk_lo[c]->get(), MPFR_RNDD);
    mpfr_mul(hi.get(), hi.get(), chunk_hi[c]->get(), MPFR_RNDU);
  }
  // The finite product is the reported value; the omitted factors only shrink it.
  Mpfr finite_lo(kBits), finite_hi(kBits);
  mpfr_set(finite_lo.get(), lo.get(), MPFR_RNDN);
  mpfr_set(finite_hi.get(), hi.get(), MPFR_RNDN);
  mpfr_neg(tail_factor.get(), tail, MPFR_RNDN);
  mpfr_exp(tail_factor.get(), tail_factor.get(), MPFR_RNDD);
  mpfr_mul(lo.get(), lo.get(), tail_factor.get(), MPFR_RNDD);

  const std::string derivation = what + ": product over " + std::to_string(n) + " primes <= " +
                                 std::to_string(cutoff) + " at " + std::to_string(kBits) +
                                 "-bit directed rounding; tail factor in [exp(-" +
                                 detail::to_decimal(tail, 6, MPFR_RNDU) + "), 1]";
  RigorousValue out = from_enclosure(finite_lo.get(), finite_hi.get(), derivation);
  // Widen the bound so the enclosure [value - eb, value + eb] also holds the tail.
  Mpfr v(2 * kBits), gap(2 * kBits);
  mpfr_set_str(v.get(), out.value.c_str(), 10, MPFR_RNDU);
  mpfr_sub(gap.get(), v.get(), lo.get(), MPFR_RNDU);
  out.error_bound = std::max(out.error_bound, mpfr_get_d(gap.get(), MPFR_RNDU));
  return out;
}

}  // namespace

double RigorousValue::lower() const { return static_cast<double>(approx()) - error_bound; }
double RigorousValue::upper() const { return static_cast<double>(approx()) + error_bound; }

bool RigorousValue::overlaps(const RigorousValue& other) const {
  return std::max(lower(), other.lower()) <= std::min(upper(), other.upper());
}

RigorousValue sigma_euler_product(std::uint64_t prime_cutoff) {
  if (prime_cutoff < 3) throw std::invalid_argument("sigma_euler_product: cutoff must be >= 3");
  // -log prod_{p > P} (1 - 2/p^2) <= sum_{n > P} (2/n^2 + 4/n^4) <= 2/P + 4/(3P^3)
  Mpfr tail(kBits), t(kBits);
  mpfr_set_ui(tail.get(), 2, MPFR_RNDN);
  mpfr_div_ui(tail.get(), tail.get(), static_cast<unsigned long>(prime_cutoff), MPFR_RNDU);
  mpfr_set_ui(t.get(), static_cast<unsigned long>(prime_cutoff), MPFR_RNDN);
  mpfr_pow_ui(t.get(), t.get(), 3, MPFR_RNDD);
  mpfr_mul_ui(t.get(), t.get(), 3, MPFR_RNDD);
  mpfr_ui_div(t.get(), 4, t.get(), MPFR_RNDU);
  mpfr_add(tail.get(), tail.get(), t.get(), MPFR_RNDU);
  return euler_product(prime_cutoff, 2, tail.get(), "sigma");
}

RigorousValue zeta2_inverse_euler_product(std::uint64_t prime_cutoff) {
  if (prime_cutoff < 3) throw std::invalid_argument("zeta2_inverse_euler_product: cutoff must be >= 3");
  // -log prod_{p > P} (1 - 1/p^2) <= sum_{n > P} (1/n^2 + 1/n^4) <= 1/P + 1/(3P^3)
  Mpfr tail(kBits), t(kBits);
  mpfr_set_ui(tail.get(), 1, MPFR_RNDN);
  mpfr_div_ui(tail.get(), tail.get(), static_cast<unsigned long>(prime_cutoff), MPFR_RNDU);
  mpfr_set_ui(t.get(), static_cast<unsigned long>(prime_cutoff), MPFR_RNDN);
  mpfr_pow_ui(t.get(), t.get(), 3, MPFR_RNDD);
  mpfr_mul_ui(t.get(), t.get(), 3, MPFR_RNDD);
  mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDU);
  mpfr_add(tail.get(), tail.get(), t.get(), MPFR_RNDU);
  return euler_product(prime_cutoff, 1, tail.get(), "6/pi^2 product");
}

RigorousValue reciprocal_zeta2() {
  Mpfr pi_lo(kBits), pi_hi(kBits), lo(kBits), hi(kBits);
  mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
  mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
  mpfr_sqr(pi_lo.get(), pi_lo.get(), MPFR_RNDD);
  mpfr_sqr(pi_hi.get(), pi_hi.get(), MPFR_RNDU);
  mpfr_ui_div(lo.get(), 6, pi_hi.get(), MPFR_RNDD);
  mpfr_ui_div(hi.get(), 6, pi_lo.get(), MPFR_RNDU);
  return from_enclosure(lo.get(), hi.get(), "6/pi^2 from MPFR pi at 256-bit directed rounding");
}

long double coprime_double_sum(std::uint64_t z) {
  if (z == 0) throw std::invalid_argument("coprime_double_sum: z must be >= 1");
  const auto mu = mobius_window(0, z + 1);
  std::vector<long double> rows(z + 1, 0.0L);
  const auto dmax = static_cast<std::int64_t>(z);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t d = 1; d <= dmax; ++d) {
    const auto ud = static_cast<std::uint64_t>(d);
    if (mu.values[ud] == 0) continue;
    detail::CompensatedSum<long double> row;
    const long double d2 = static_cast<long double>(ud) * static_cast<long double>(ud);
    for (std::uint64_t t = 1; t <= z / ud; ++t) {
      if (mu.values[t] == 0 || std::gcd(ud, t) != 1) continue;
      const long double t2 = static_cast<long double>(t) * static_cast<long double>(t);
      row.add(static_cast<long double>(mu.values[ud] * mu.values[t]) / (d2 * t2));
    }
    rows[ud] = row.value();
  }
  detail::CompensatedSum<long double> total;
  for (auto r : rows) total.add(r);
  return total.value();
}

}  // namespace psfree
