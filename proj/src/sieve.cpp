#include "psfree/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psfree {

std::int32_t SieveWindow::at(std::uint64_t m) const {
  if (m < lo || m >= hi) throw std::out_of_range("SieveWindow::at: m outside window");
  return values[m - lo];
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && (r > UINT32_MAX || r * r > n)) --r;
  while (r + 1 <= UINT32_MAX && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("primes_up_to: n must be >= 2");
  if (n > UINT32_MAX) throw std::invalid_argument("primes_up_to: n too large");
  std::vector<std::uint8_t> composite(n + 1, 0);
  std::vector<std::uint32_t> primes;
  primes.reserve(static_cast<std::size_t>(1.3 * static_cast<double>(n) / std::log(static_cast<double>(n))) + 8);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return primes;
}

std::vector<std::uint32_t> sieving_primes(std::uint64_t hi) {
  const std::uint64_t root = hi > 0 ? isqrt(hi - 1) : 0;
  return root >= 2 ? primes_up_to(root) : std::vector<std::uint32_t>{};
}

namespace {

void check_range(std::uint64_t lo, std::uint64_t hi) {
  if (hi <= lo) throw std::invalid_argument("sieve window requires hi > lo");
}

// First multiple of step that is >= lo.
std::uint64_t first_multiple(std::uint64_t lo, std::uint64_t step) {
  return (lo + step - 1) / step * step;
}

}  // namespace

void mark_squarefree(std::uint64_t lo, std::span<std::uint8_t> out, std::span<const std::uint32_t> primes) {
  std::fill(out.begin(), out.end(), std::uint8_t{1});
  if (out.empty()) return;
  const std::uint64_t hi = lo + out.size();
  for (std::uint32_t p : primes) {
    const std::uint64_t sq = std::uint64_t{p} * p;
    if (sq >= hi) break;
    for (std::uint64_t m = first_multiple(lo, sq); m < hi; m += sq) out[m - lo] = 0;
  }
  if (lo == 0) out[0] = 0;
}

SieveWindow squarefree_window(std::uint64_t lo, std::uint64_t hi) {
  check_range(lo, hi);
  const auto primes = sieving_primes(hi);
  std::vector<std::uint8_t> flags(hi - lo);
  mark_squarefree(lo, flags, primes);
  SieveWindow w{lo, hi, SieveKind::Squarefree, {}};
  w.values.assign(flags.begin(), flags.end());
  return w;
}

SieveWindow mobius_window(std::uint64_t lo, std::uint64_t hi) {
  check_range(lo, hi);
  const auto primes = sieving_primes(hi);
  SieveWindow w{lo, hi, SieveKind::Mobius, std::vector<std::int32_t>(hi - lo, 1)};
  // Product of the distinct small primes found; a leftover cofactor > 1 is one more prime.
  std::vector<std::uint64_t> prod(hi - lo, 1);
  for (std::uint32_t p : primes) {
    for (std::uint64_t m = first_multiple(lo, p); m < hi; m += p) {
      w.values[m - lo] = -w.values[m - lo];
      prod[m - lo] *= p;
    }
    const std::uint64_t sq = std::uint64_t{p} * p;
    for (std::uint64_t m = first_multiple(lo, sq); m < hi; m += sq) w.values[m - lo] = 0;
  }
  for (std::uint64_t m = lo; m < hi; ++m) {
    auto& v = w.values[m - lo];
    if (m == 0) {
      v = 0;
    } else if (v != 0 && prod[m - lo] != m) {
      v = -v;
    }
  }
  return w;
}

SieveWindow divisor_window(std::uint64_t lo, std::uint64_t hi) {
  check_range(lo, hi);
  if (lo == 0) throw std::invalid_argument("divisor_window: tau(0) is undefined");
  const auto primes = sieving_primes(hi);
  SieveWindow w{lo, hi, SieveKind::Divisor, std::vector<std::int32_t>(hi - lo, 1)};
  std::vector<std::uint64_t> rem(hi - lo);
  for (std::uint64_t m = lo; m < hi; ++m) rem[m - lo] = m;
  for (std::uint32_t p : primes) {
    for (std::uint64_t m = first_multiple(lo, p); m < hi; m += p) {
      auto& r = rem[m - lo];
      std::int32_t e = 0;
      while (r % p == 0) {
        r /= p;
        ++e;
      }
      w.values[m - lo] *= e + 1;
    }
  }
  for (std::uint64_t i = 0; i < rem.size(); ++i)
    if (rem[i] > 1) w.values[i] *= 2;
  return w;
}

std::uint64_t count_squarefree(std::uint64_t lo, std::uint64_t hi, std::uint64_t window) {
  if (hi <= lo) return 0;
  if (window == 0) throw std::invalid_argument("count_squarefree: window must be positive");
  const auto primes = sieving_primes(hi);
  const std::int64_t chunks = static_cast<std::int64_t>((hi - lo + window - 1) / window);
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (std::int64_t i = 0; i < chunks; ++i) {
    const std::uint64_t a = lo + static_cast<std::uint64_t>(i) * window;
    const std::uint64_t b = std::min(hi, a + window);
    std::vector<std::uint8_t> flags(b - a);
    mark_squarefree(a, flags, primes);
    for (auto f : flags) total += f;
  }
  return total;
}

std::uint64_t divisor_summatory(std::uint64_t z, std::uint64_t window) {
  if (z == 0) return 0;
  if (window == 0) throw std::invalid_argument("divisor_summatory: window must be positive");
  const std::int64_t chunks = static_cast<std::int64_t>((z + window - 1) / window);
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (std::int64_t i = 0; i < chunks; ++i) {
    const std::uint64_t a = 1 + static_cast<std::uint64_t>(i) * window;
    const std::uint64_t b = std::min(z + 1, a + window);
    const auto w = divisor_window(a, b);
    for (auto v : w.values) total += static_cast<std::uint64_t>(v);
  }
  return total;
}

}  // namespace psfree
