#include "psfree/reference.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "psfree/exactpow.hpp"

namespace psfree::reference {

bool is_squarefree(std::uint64_t m) {
  if (m == 0) return false;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return false;
  }
  return true;
}

int mobius(std::uint64_t m) {
  if (m == 0) return 0;
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    sign = -sign;
  }
  return m > 1 ? -sign : sign;
}

std::uint64_t tau(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("tau(0) is undefined");
  std::uint64_t count = 1;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    std::uint64_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    count *= e + 1;
  }
  return m > 1 ? 2 * count : count;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t k = 2; k <= n; ++k) {
    bool prime = true;
    for (std::uint32_t p : out) {
      if (std::uint64_t{p} * p > k) break;
      if (k % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(static_cast<std::uint32_t>(k));
  }
  return out;
}

std::uint64_t carlitz_count(std::uint64_t X) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= X; ++n) count += is_squarefree(n) && is_squarefree(n + 1);
  return count;
}

std::uint64_t cao_zhai_count(std::uint64_t X, const Exponent& c) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= X; ++n) count += is_squarefree(floor_pow(n, c, {}, FastPath::Disabled));
  return count;
}

std::uint64_t sc_count(std::uint64_t X, const Exponent& c) {
  std::uint64_t count = 0;
  for (std::uint64_t n = X / 2 + 1; n <= X; ++n) {
    const std::uint64_t m = floor_pow(n, c, {}, FastPath::Disabled);
    count += is_squarefree(m) && is_squarefree(m + 1);
  }
  return count;
}

KSums k_sums(std::uint64_t X, const Exponent& c, std::uint64_t z_threshold) {
  const std::uint64_t m_hi = floor_pow(X, c, {}, FastPath::Disabled);
  const std::uint64_t m_lo = floor_pow_ratio(X, 2, c);
  KSums out;
  for (std::uint64_t d = 1; d * d <= m_hi + 1; ++d) {
    const int mu_d = mobius(d);
    if (mu_d == 0) continue;
    for (std::uint64_t t = 1; t * t <= m_hi + 2; ++t) {
      const int mu_t = mobius(t);
      if (mu_t == 0 || std::gcd(d, t) != 1) continue;
      std::int64_t inner = 0;
      for (std::uint64_t k = 1; k * d * d <= m_hi; ++k) {
        const std::uint64_t m = k * d * d;
        if (m < m_lo || (m + 1) % (t * t) != 0) continue;
        inner += static_cast<std::int64_t>(count_n_in_pow_window(m, c, X / 2, X));
      }
      (d * t <= z_threshold ? out.s1 : out.s2) += mu_d * mu_t * inner;
    }
  }
  return out;
}

std::complex<double> eval_H(const ExpSumInstance& inst) {
  const auto range = inst.l_range();
  const long double g = inst.c.gamma_value();
  std::complex<double> sum{0.0, 0.0};
  const std::uint64_t t2 = inst.t * inst.t;
  for (std::uint64_t l = range.first; l <= range.last && !range.empty(); ++l) {
    const long double y = std::pow(static_cast<long double>(l * t2 - 1), g);
    const long double fy = y - std::floor(y);
    const long double phase = static_cast<long double>(inst.h) * fy;
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(phase - std::floor(phase));
    sum += std::complex<double>(std::cos(theta), std::sin(theta));
  }
  return sum;
}

std::uint64_t divisor_pairs(std::uint64_t z) {
  std::uint64_t count = 0;
  for (std::uint64_t d = 1; d <= z; ++d)
    for (std::uint64_t t = 1; d * t <= z; ++t) ++count;
  return count;
}

}  // namespace psfree::reference
