#include "psfree/exactpow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "mpfr_util.hpp"
#include "psfree/errors.hpp"

namespace psfree {

namespace {

using detail::Mpfr;
using detail::Mpz;

// Integer Newton iteration for floor(m^(1/b)), started above the root so the
// iterates decrease monotonically onto the answer.
void floor_root_mpz(mpz_ptr r, mpz_srcptr m, unsigned long b) {
  if (b == 0) throw std::invalid_argument("floor_root: b must be >= 1");
  if (mpz_sgn(m) < 0) throw std::invalid_argument("floor_root: m must be non-negative");
  if (mpz_sgn(m) == 0 || b == 1) {
    mpz_set(r, m);
    return;
  }
  const std::size_t bits = mpz_sizeinbase(m, 2);
  Mpz x, y, t;
  mpz_set_ui(x.get(), 1);
  mpz_mul_2exp(x.get(), x.get(), (bits + b - 1) / b);
  for (;;) {
    mpz_pow_ui(t.get(), x.get(), b - 1);
    mpz_tdiv_q(y.get(), m, t.get());
    mpz_addmul_ui(y.get(), x.get(), b - 1);
    mpz_tdiv_q_ui(y.get(), y.get(), b);
    if (mpz_cmp(y.get(), x.get()) >= 0) break;
    mpz_swap(x.get(), y.get());
  }
  // Certify r^b <= m < (r+1)^b.
  for (;;) {
    mpz_pow_ui(t.get(), x.get(), b);
    if (mpz_cmp(t.get(), m) <= 0) break;
    mpz_sub_ui(x.get(), x.get(), 1);
  }
  for (;;) {
    mpz_add_ui(y.get(), x.get(), 1);
    mpz_pow_ui(t.get(), y.get(), b);
    if (mpz_cmp(t.get(), m) > 0) break;
    mpz_swap(x.get(), y.get());
  }
  mpz_set(r, x.get());
}

std::uint64_t to_u64(mpz_srcptr z) {
  if (mpz_sizeinbase(z, 2) > 64) throw std::overflow_error("value does not fit in 64 bits");
  return static_cast<std::uint64_t>(mpz_get_ui(z));
}

unsigned long as_ulong(std::uint64_t v) { return static_cast<unsigned long>(v); }

// p^a == k^b * q^a, i.e. (p/q)^(a/b) is exactly the integer k. Only attempted
// when the operands stay below a few million bits.
bool is_exact_hit(std::uint64_t p, std::uint64_t q, const Exponent& c, std::uint64_t k) {
  const double bits_lhs = static_cast<double>(c.numerator()) * std::log2(static_cast<double>(p) + 1.0);
  const double bits_rhs = static_cast<double>(c.denominator()) * std::log2(static_cast<double>(k) + 1.0);
  if (bits_lhs > 4e6 || bits_rhs > 4e6) return false;
  Mpz lhs, rhs, qa;
  mpz_ui_pow_ui(lhs.get(), as_ulong(p), as_ulong(c.numerator()));
  mpz_ui_pow_ui(rhs.get(), as_ulong(k), as_ulong(c.denominator()));
  mpz_ui_pow_ui(qa.get(), as_ulong(q), as_ulong(c.numerator()));
  mpz_mul(rhs.get(), rhs.get(), qa.get());
  return mpz_cmp(lhs.get(), rhs.get()) == 0;
}

// Encloses (p/q)^c in [lo, hi] at the given precision. Requires p >= q so the
// power is non-decreasing in c.
void enclose_pow(mpfr_ptr lo, mpfr_ptr hi, std::uint64_t p, std::uint64_t q, const Exponent& c,
                 mpfr_prec_t bits) {
  Mpfr c_lo(bits), c_hi(bits), base_lo(bits), base_hi(bits);
  detail::set_u64(c_lo.get(), c.numerator(), MPFR_RNDD);
  mpfr_div_ui(c_lo.get(), c_lo.get(), as_ulong(c.denominator()), MPFR_RNDD);
  detail::set_u64(c_hi.get(), c.numerator(), MPFR_RNDU);
  mpfr_div_ui(c_hi.get(), c_hi.get(), as_ulong(c.denominator()), MPFR_RNDU);
  detail::set_u64(base_lo.get(), p, MPFR_RNDD);
  mpfr_div_ui(base_lo.get(), base_lo.get(), as_ulong(q), MPFR_RNDD);
  detail::set_u64(base_hi.get(), p, MPFR_RNDU);
  mpfr_div_ui(base_hi.get(), base_hi.get(), as_ulong(q), MPFR_RNDU);
  mpfr_pow(lo, base_lo.get(), c_lo.get(), MPFR_RNDD);
  mpfr_pow(hi, base_hi.get(), c_hi.get(), MPFR_RNDU);
}

template <class Decide>
auto escalate(const PrecisionPolicy& policy, const char* what, Decide decide) {
  policy.validate();
  unsigned bits = policy.start_bits;
  for (;;) {
    if (auto r = decide(static_cast<mpfr_prec_t>(bits))) return *r;
    if (bits >= policy.max_bits)
      throw AmbiguousAtMaxPrecision(std::string(what) + ": interval still straddles an integer at " +
                                    std::to_string(policy.max_bits) + " bits");
    const double next = std::ceil(static_cast<double>(bits) * policy.escalation_factor);
    bits = static_cast<unsigned>(std::min<double>(next, policy.max_bits));
  }
}

std::uint64_t floor_pow_interval(std::uint64_t p, std::uint64_t q, const Exponent& c,
                                 const PrecisionPolicy& policy) {
  return escalate(policy, "floor_pow", [&](mpfr_prec_t bits) -> std::optional<std::uint64_t> {
    Mpfr lo(bits), hi(bits);
    enclose_pow(lo.get(), hi.get(), p, q, c, bits);
    mpfr_floor(lo.get(), lo.get());
    mpfr_floor(hi.get(), hi.get());
    if (mpfr_cmp_d(hi.get(), 18446744073709551615.0) >= 0) throw std::overflow_error("floor_pow: result exceeds 64 bits");
    const auto f_lo = static_cast<std::uint64_t>(mpfr_get_uj(lo.get(), MPFR_RNDN));
    const auto f_hi = static_cast<std::uint64_t>(mpfr_get_uj(hi.get(), MPFR_RNDN));
    if (f_lo == f_hi) return f_lo;
    if (f_hi == f_lo + 1 && is_exact_hit(p, q, c, f_hi)) return f_hi;
    return std::nullopt;
  });
}

std::strong_ordering cmp_pow_interval(std::uint64_t n, const Exponent& c, std::uint64_t m,
                                      const PrecisionPolicy& policy) {
  return escalate(policy, "cmp_pow", [&](mpfr_prec_t bits) -> std::optional<std::strong_ordering> {
    Mpfr lo(bits), hi(bits);
    enclose_pow(lo.get(), hi.get(), n, 1, c, bits);
    if (mpfr_cmp_ui(hi.get(), as_ulong(m)) < 0) return std::strong_ordering::less;
    if (mpfr_cmp_ui(lo.get(), as_ulong(m)) > 0) return std::strong_ordering::greater;
    if (is_exact_hit(n, 1, c, m)) return std::strong_ordering::equal;
    return std::nullopt;
  });
}

std::strong_ordering cmp_pow_exact(std::uint64_t n, const Exponent& c, std::uint64_t m) {
  thread_local Mpz lhs, rhs;
  mpz_ui_pow_ui(lhs.get(), as_ulong(n), as_ulong(c.numerator()));
  mpz_ui_pow_ui(rhs.get(), as_ulong(m), as_ulong(c.denominator()));
  const int r = mpz_cmp(lhs.get(), rhs.get());
  return r < 0 ? std::strong_ordering::less : r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

}  // namespace

std::string floor_root(const std::string& m_decimal, std::uint64_t b) {
  Mpz m, r;
  if (mpz_set_str(m.get(), m_decimal.c_str(), 10) != 0) throw std::invalid_argument("floor_root: not a decimal integer");
  floor_root_mpz(r.get(), m.get(), as_ulong(b));
  char* s = mpz_get_str(nullptr, 10, r.get());
  std::string out(s);
  void (*freefunc)(void*, std::size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(s, out.size() + 1);
  return out;
}

std::uint64_t floor_root(std::uint64_t m, std::uint64_t b) {
  Mpz mz, r;
  detail::set_u64(mz.get(), m);
  floor_root_mpz(r.get(), mz.get(), as_ulong(b));
  return to_u64(r.get());
}

std::uint64_t floor_pow(std::uint64_t n, const Exponent& c, const PrecisionPolicy& policy, FastPath fast) {
  if (n == 0) throw std::invalid_argument("floor_pow: n must be >= 1");
  if (n == 1) return 1;
  if (!c.is_exact()) return floor_pow_interval(n, 1, c, policy);
  if (fast == FastPath::Enabled) {
    const long double v = std::pow(static_cast<long double>(n), c.value());
    if (v < 0x1p40L) {
      const long double fl = std::floor(v);
      const long double frac = v - fl;
      if (frac > 1e-4L && frac < 1.0L - 1e-4L) return static_cast<std::uint64_t>(fl);
    }
  }
  thread_local Mpz power, root;
  mpz_ui_pow_ui(power.get(), as_ulong(n), as_ulong(c.numerator()));
  floor_root_mpz(root.get(), power.get(), as_ulong(c.denominator()));
  return to_u64(root.get());
}

std::uint64_t floor_pow_ratio(std::uint64_t p, std::uint64_t q, const Exponent& c, const PrecisionPolicy& policy) {
  if (q == 0 || p < q) throw std::invalid_argument("floor_pow_ratio: requires p >= q >= 1");
  if (!c.is_exact()) return floor_pow_interval(p, q, c, policy);
  Mpz num, den, root;
  mpz_ui_pow_ui(num.get(), as_ulong(p), as_ulong(c.numerator()));
  mpz_ui_pow_ui(den.get(), as_ulong(q), as_ulong(c.numerator()));
  mpz_fdiv_q(num.get(), num.get(), den.get());
  // floor((y)^(1/b)) == floor((floor y)^(1/b)) for real y >= 0.
  floor_root_mpz(root.get(), num.get(), as_ulong(c.denominator()));
  return to_u64(root.get());
}

std::uint64_t floor_rational_power(std::uint64_t n, Rational e) {
  if (e.den == 0) throw std::invalid_argument("floor_rational_power: zero denominator");
  Mpz power, root;
  mpz_ui_pow_ui(power.get(), as_ulong(n), as_ulong(e.num));
  floor_root_mpz(root.get(), power.get(), as_ulong(e.den));
  return to_u64(root.get());
}

std::strong_ordering cmp_pow(std::uint64_t n, const Exponent& c, std::uint64_t m, const PrecisionPolicy& policy) {
  if (n == 0) throw std::invalid_argument("cmp_pow: n must be >= 1");
  if (c.is_exact()) return cmp_pow_exact(n, c, m);
  return cmp_pow_interval(n, c, m, policy);
}

std::uint64_t first_n_reaching(std::uint64_t m, const Exponent& c, const PrecisionPolicy& policy) {
  if (m <= 1) return 1;
  const long double est = std::ceil(std::pow(static_cast<long double>(m), c.gamma_value()));
  std::uint64_t n = est < 1.0L ? 1 : static_cast<std::uint64_t>(est);
  while (n > 1 && cmp_pow(n - 1, c, m, policy) != std::strong_ordering::less) --n;
  while (cmp_pow(n, c, m, policy) == std::strong_ordering::less) ++n;
  return n;
}

std::uint64_t count_n_in_pow_window(std::uint64_t m, const Exponent& c, std::uint64_t n_lo, std::uint64_t n_hi,
                                    const PrecisionPolicy& policy) {
  if (n_lo >= n_hi) throw std::invalid_argument("count_n_in_pow_window: requires n_lo < n_hi");
  const std::uint64_t first = std::max(first_n_reaching(m, c, policy), n_lo + 1);
  const std::uint64_t end = std::min(first_n_reaching(m + 1, c, policy), n_hi + 1);
  return end > first ? end - first : 0;
}

}  // namespace psfree
