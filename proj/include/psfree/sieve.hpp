#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace psfree {

inline constexpr std::uint64_t kDefaultWindowSize = std::uint64_t{1} << 20;

enum class SieveKind { Squarefree, Mobius, Divisor };

/// Dense per-element values over the half-open range [lo, hi).
struct SieveWindow {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  SieveKind kind = SieveKind::Squarefree;
  std::vector<std::int32_t> values;

  std::size_t size() const { return values.size(); }
  /// Value at m; m must lie in [lo, hi).
  std::int32_t at(std::uint64_t m) const;
};

std::uint64_t isqrt(std::uint64_t n);

/// Primes <= n in ascending order (n >= 2).
std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

/// Primes p with p^2 < hi, i.e. everything needed to sieve [0, hi).
std::vector<std::uint32_t> sieving_primes(std::uint64_t hi);

/// mu^2 over [lo, hi): multiples of p^2 are crossed out for every p <= sqrt(hi-1).
/// 0 is not squarefree.
SieveWindow squarefree_window(std::uint64_t lo, std::uint64_t hi);
/// mu over [lo, hi), with mu(0) = 0.
SieveWindow mobius_window(std::uint64_t lo, std::uint64_t hi);
/// tau over [lo, hi); lo must be >= 1.
SieveWindow divisor_window(std::uint64_t lo, std::uint64_t hi);

/// Byte-level squarefree kernel: out[i] = mu^2(lo + i). `primes` must contain
/// every prime p with p^2 <= lo + out.size() - 1.
void mark_squarefree(std::uint64_t lo, std::span<std::uint8_t> out, std::span<const std::uint32_t> primes);

/// #squarefree m in [lo, hi), windows of `window` elements processed in parallel.
std::uint64_t count_squarefree(std::uint64_t lo, std::uint64_t hi, std::uint64_t window = kDefaultWindowSize);

/// sum_{n <= z} tau(n), windowed.
std::uint64_t divisor_summatory(std::uint64_t z, std::uint64_t window = kDefaultWindowSize);

}  // namespace psfree
