#include "psfree/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "psfree/errors.hpp"
#include "psfree/parallel.hpp"
#include "psfree/sieve.hpp"

namespace psfree {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_c_above_one(const Exponent& c, const char* what) {
  if (c.numerator() <= c.denominator())
    throw std::invalid_argument(std::string(what) + ": requires c > 1, got " + c.to_string());
}

// Counts n in [n_first, n_last] with mu^2([n^c]) = 1 (and mu^2([n^c] + 1) = 1
// when `pairs`). [n^c] is monotone in n, so each n-chunk maps onto one
// contiguous m-window that is sieved once.
std::uint64_t pow_image_count(std::uint64_t n_first, std::uint64_t n_last, const Exponent& c,
                              const PrecisionPolicy& policy, bool pairs) {
  if (n_last < n_first) return 0;
  const std::uint64_t m_top = floor_pow(n_last, c, policy);
  const auto primes = sieving_primes(m_top + 2);

  const long double slope = c.value() * std::pow(static_cast<long double>(n_last), c.value() - 1.0L);
  const auto chunk = static_cast<std::uint64_t>(std::clamp<long double>(2097152.0L / slope, 256.0L, 65536.0L));
  const auto chunks = static_cast<std::int64_t>((n_last - n_first) / chunk + 1);

  ExceptionSink errors;
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (std::int64_t i = 0; i < chunks; ++i) {
    if (errors.failed()) continue;
    try {
      const std::uint64_t a = n_first + static_cast<std::uint64_t>(i) * chunk;
      const std::uint64_t b = std::min(n_last, a + chunk - 1);
      std::vector<std::uint64_t> ms(b - a + 1);
      for (std::uint64_t n = a; n <= b; ++n) ms[n - a] = floor_pow(n, c, policy);
      const std::uint64_t m_lo = ms.front();
      std::vector<std::uint8_t> flags(ms.back() - m_lo + 2);
      mark_squarefree(m_lo, flags, primes);
      std::uint64_t local = 0;
      for (auto m : ms) {
        const std::uint64_t at = m - m_lo;
        local += pairs ? (flags[at] & flags[at + 1]) : flags[at];
      }
      total += local;
    } catch (...) {
      errors.capture();
    }
  }
  errors.rethrow();
  return total;
}

}  // namespace

std::string to_string(SumKind kind) {
  switch (kind) {
    case SumKind::Carlitz: return "carlitz";
    case SumKind::CaoZhai: return "caoZhai";
    case SumKind::ScPair: return "scPair";
  }
  return "unknown";
}

SumKind parse_sum_kind(std::string_view text) {
  if (text == "carlitz") return SumKind::Carlitz;
  if (text == "caozhai" || text == "caoZhai") return SumKind::CaoZhai;
  if (text == "scpair" || text == "scPair") return SumKind::ScPair;
  throw std::invalid_argument("unknown sum kind '" + std::string(text) + "'");
}

CountReport carlitz_count(std::uint64_t X) {
  if (X < 1) throw std::invalid_argument("carlitz_count: X must be >= 1");
  const auto start = Clock::now();
  const auto primes = sieving_primes(X + 2);
  const std::uint64_t window = kDefaultWindowSize;
  const auto chunks = static_cast<std::int64_t>((X + window - 1) / window);
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (std::int64_t i = 0; i < chunks; ++i) {
    const std::uint64_t a = 1 + static_cast<std::uint64_t>(i) * window;
    const std::uint64_t b = std::min(X, a + window - 1);
    // one extra element so the pair (b, b+1) is visible in this window
    std::vector<std::uint8_t> flags(b - a + 2);
    mark_squarefree(a, flags, primes);
    std::uint64_t local = 0;
    for (std::uint64_t j = 0; j + 1 < flags.size(); ++j) local += flags[j] & flags[j + 1];
    total += local;
  }
  return {SumKind::Carlitz, X, std::nullopt, total, seconds_since(start)};
}

CountReport cao_zhai_count(std::uint64_t X, const Exponent& c, const PrecisionPolicy& policy) {
  if (X < 1) throw std::invalid_argument("cao_zhai_count: X must be >= 1");
  require_c_above_one(c, "cao_zhai_count");
  const auto start = Clock::now();
  const auto count = pow_image_count(1, X, c, policy, false);
  return {SumKind::CaoZhai, X, c, count, seconds_since(start)};
}

CountReport sc_count(std::uint64_t X, const Exponent& c, const PrecisionPolicy& policy) {
  if (X < 2) throw std::invalid_argument("sc_count: X must be >= 2");
  require_c_above_one(c, "sc_count");
  const auto start = Clock::now();
  const auto count = pow_image_count(X / 2 + 1, X, c, policy, true);
  return {SumKind::ScPair, X, c, count, seconds_since(start)};
}

std::uint64_t mod_inverse(std::int64_t a, std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
  const auto mm = static_cast<__int128>(m);
  __int128 r0 = mm, r1 = static_cast<__int128>(a) % mm;
  if (r1 < 0) r1 += mm;
  __int128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    s0 = std::exchange(s1, s0 - q * s1);
  }
  if (r0 != 1)
    throw NotInvertible("mod_inverse: " + std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  __int128 inv = s0 % mm;
  if (inv < 0) inv += mm;
  return static_cast<std::uint64_t>(inv);
}

Progression count_k_in_progression(std::uint64_t lo, std::uint64_t hi, std::uint64_t modulus,
                                   std::uint64_t residue) {
  if (modulus == 0) throw std::invalid_argument("count_k_in_progression: modulus must be positive");
  if (residue >= modulus) throw std::invalid_argument("count_k_in_progression: residue must be < modulus");
  if (hi <= lo) return {lo + 1, 0, modulus};
  // smallest k > lo with k = residue (mod modulus)
  const std::uint64_t start = lo + 1;
  const std::uint64_t offset = (residue + modulus - start % modulus) % modulus;
  if (offset > hi - start) return {start + offset, 0, modulus};
  const std::uint64_t first = start + offset;
  return {first, (hi - first) / modulus + 1, modulus};
}

Progression count_k_in_progression(long double k_lo, long double k_hi, std::uint64_t modulus,
                                   std::uint64_t residue) {
  if (!(k_lo <= k_hi)) throw std::invalid_argument("count_k_in_progression: requires kLo <= kHi");
  if (k_hi < 1.0L) return count_k_in_progression(std::uint64_t{0}, std::uint64_t{0}, modulus, residue);
  const auto hi = static_cast<std::uint64_t>(std::floor(k_hi));
  const auto lo = k_lo < 0.0L ? std::uint64_t{0} : static_cast<std::uint64_t>(std::floor(k_lo));
  return count_k_in_progression(lo, hi, modulus, residue);
}

std::uint64_t ZSplit::threshold() const {
  if (std::isnan(z)) throw std::invalid_argument("ZSplit: z is NaN");
  if (z < 0) return 0;
  if (z >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::floor(z));
}

double z_split(std::uint64_t X, const Exponent& c) {
  const long double e = (2.0L * c.value() - 1.0L) / 4.0L;
  return static_cast<double>(std::pow(static_cast<long double>(X), e));
}

std::uint64_t z_split_floor(std::uint64_t X, const Exponent& c) {
  // (2c - 1)/4 = (2a - b)/(4b)
  return floor_rational_power(X, Rational{2 * c.numerator() - c.denominator(), 4 * c.denominator()});
}

std::vector<KSums> k_sums(std::uint64_t X, const Exponent& c, std::span<const ZSplit> splits, Truncation truncation,
                          const PrecisionPolicy& policy) {
  if (X < 2) throw std::invalid_argument("k_sums: X must be >= 2");
  require_c_above_one(c, "k_sums");
  const std::uint64_t m_hi = floor_pow(X, c, policy);             // floor(X^c)
  const std::uint64_t m_sliver = floor_pow_ratio(X, 2, c, policy); // floor((X/2)^c)
  const std::uint64_t n_lo = X / 2;
  const std::uint64_t d_max = std::max(truncation.d_max, isqrt(m_hi + 1));
  const std::uint64_t t_max = std::max(truncation.t_max, isqrt(m_hi + 2));
  const auto mu = mobius_window(0, std::max(d_max, t_max) + 1);

  std::vector<std::uint64_t> thresholds;
  for (const auto& s : splits) thresholds.push_back(s.threshold());

  std::vector<KSums> result(splits.size());
  ExceptionSink errors;
#pragma omp parallel
  {
    std::vector<KSums> local(splits.size());
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t di = 1; di <= static_cast<std::int64_t>(d_max); ++di) {
      const auto d = static_cast<std::uint64_t>(di);
      if (mu.values[d] == 0 || errors.failed()) continue;
      try {
        const std::uint64_t d2 = d * d;
        const std::uint64_t k_hi = m_hi / d2;
        if (k_hi == 0) continue;
        // pre-adjusted range is k d^2 >= floor((X/2)^c), i.e. k > ceil(F / d^2) - 1
        const std::uint64_t k_lo = m_sliver == 0 ? 0 : (m_sliver + d2 - 1) / d2 - 1;
        for (std::uint64_t t = 1; t <= t_max; ++t) {
          if (mu.values[t] == 0 || std::gcd(d, t) != 1) continue;
          const std::uint64_t t2 = t * t;
          // k d^2 + 1 = 0 (mod t^2)
          const std::uint64_t residue = t == 1 ? 0 : (t2 - mod_inverse(static_cast<std::int64_t>(d2 % t2), t2)) % t2;
          const auto ks = count_k_in_progression(k_lo, k_hi, t2, residue);
          if (ks.count() == 0) continue;
          std::int64_t pre = 0;
          std::int64_t shown = 0;
          for (std::uint64_t k : ks) {
            const std::uint64_t m = k * d2;
            const auto hits = static_cast<std::int64_t>(count_n_in_pow_window(m, c, n_lo, X, policy));
            pre += hits;
            if (m != m_sliver) shown += hits;
          }
          const std::int64_t sign = mu.values[d] * mu.values[t];
          for (std::size_t i = 0; i < thresholds.size(); ++i) {
            const bool in_s1 = d * t <= thresholds[i];
            (in_s1 ? local[i].s1 : local[i].s2) += sign * pre;
            (in_s1 ? local[i].s1_displayed : local[i].s2_displayed) += sign * shown;
          }
        }
      } catch (...) {
        errors.capture();
      }
    }
#pragma omp critical(psfree_k_sums)
    for (std::size_t i = 0; i < result.size(); ++i) {
      result[i].s1 += local[i].s1;
      result[i].s2 += local[i].s2;
      result[i].s1_displayed += local[i].s1_displayed;
      result[i].s2_displayed += local[i].s2_displayed;
    }
  }
  errors.rethrow();
  return result;
}

namespace {

std::uint64_t split_threshold(std::uint64_t X, const Exponent& c, std::optional<double> z_override) {
  return z_override ? ZSplit{*z_override}.threshold() : z_split_floor(X, c);
}

}  // namespace

std::int64_t s1_term(std::uint64_t X, const Exponent& c, std::optional<double> z_override,
                     const PrecisionPolicy& policy) {
  const ZSplit split{static_cast<double>(split_threshold(X, c, z_override))};
  return k_sums(X, c, std::span(&split, 1), {}, policy).front().s1;
}

std::int64_t s2_term(std::uint64_t X, const Exponent& c, std::optional<double> z_override,
                     const PrecisionPolicy& policy) {
  const ZSplit split{static_cast<double>(split_threshold(X, c, z_override))};
  return k_sums(X, c, std::span(&split, 1), {}, policy).front().s2;
}

std::int64_t displayed_boundary(std::uint64_t X, const Exponent& c, const PrecisionPolicy& policy) {
  if (X < 2) throw std::invalid_argument("displayed_boundary: X must be >= 2");
  const std::uint64_t m = floor_pow_ratio(X, 2, c, policy);
  const std::uint64_t hits = count_n_in_pow_window(m, c, X / 2, X, policy);
  if (hits == 0) return 0;
  const std::uint64_t root = isqrt(m + 1);
  const auto mu = mobius_window(0, root + 1);
  // sum_{d^2 | m} mu(d) and sum_{t^2 | m+1} mu(t); gcd(m, m+1) = 1 makes the pairs coprime
  std::int64_t over_d = 0;
  std::int64_t over_t = 0;
  for (std::uint64_t d = 1; d <= root; ++d) {
    if (m % (d * d) == 0) over_d += mu.values[d];
    if ((m + 1) % (d * d) == 0) over_t += mu.values[d];
  }
  return over_d * over_t * static_cast<std::int64_t>(hits);
}

DecompositionReport decompose(std::uint64_t X, const Exponent& c, std::optional<double> z_override,
                              const PrecisionPolicy& policy) {
  if (X < 2) throw std::invalid_argument("decompose: X must be >= 2");
  require_c_above_one(c, "decompose");
  DecompositionReport r;
  r.X = X;
  r.c = c;
  // the double z is for reporting; the split itself uses the exact floor
  r.z = z_override ? *z_override : z_split(X, c);
  const ZSplit exact_split{static_cast<double>(split_threshold(X, c, z_override))};
  const auto sums = k_sums(X, c, std::span(&exact_split, 1), {}, policy).front();
  r.direct = sc_count(X, c, policy).count;
  r.s1 = sums.s1;
  r.s2 = sums.s2;
  r.boundary = 0;
  r.identity_holds = static_cast<std::int64_t>(r.direct) == r.s1 + r.s2 + r.boundary;
  r.displayed.s1 = sums.s1_displayed;
  r.displayed.s2 = sums.s2_displayed;
  r.displayed.boundary = displayed_boundary(X, c, policy);
  r.displayed.identity_holds =
      static_cast<std::int64_t>(r.direct) == r.displayed.s1 + r.displayed.s2 + r.displayed.boundary;
  return r;
}

double reference_exponent(SumKind kind, const std::optional<Exponent>& c) {
  switch (kind) {
    case SumKind::Carlitz: return 2.0 / 3.0;
    case SumKind::CaoZhai: return 1.0;
    case SumKind::ScPair:
      if (!c) throw std::invalid_argument("reference_exponent: scPair needs an exponent");
      return static_cast<double>((6.0L * c->value() + 1.0L) / 8.0L);
  }
  return 1.0;
}

ErrorSample error_sample(const CountReport& report, const RigorousValue& constant) {
  ErrorSample s;
  s.sum_kind = report.sum_kind;
  s.X = report.X;
  s.c = report.c;
  s.count = report.count;
  s.elapsed = report.elapsed;
  const long double coeff = report.sum_kind == SumKind::ScPair ? 0.5L : 1.0L;
  const long double x = static_cast<long double>(report.X);
  s.main_term = coeff * constant.approx() * x;
  s.error = static_cast<long double>(report.count) - s.main_term;
  s.normalized_error = s.error / std::pow(x, static_cast<long double>(reference_exponent(report.sum_kind, report.c)));
  s.main_term_uncertainty = static_cast<double>(coeff * static_cast<long double>(constant.error_bound) * x);
  return s;
}

ErrorSample error_sample(std::uint64_t X, const Exponent& c, const RigorousValue& sigma,
                         const PrecisionPolicy& policy) {
  return error_sample(sc_count(X, c, policy), sigma);
}

}  // namespace psfree
