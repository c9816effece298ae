#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "psfree/exponent.hpp"

namespace psfree {

enum class FastPath { Enabled, Disabled };

/// Largest r with r^b <= m, for m given in decimal. Integer Newton iteration
/// from an over-estimate, then a certified r^b <= m < (r+1)^b check.
std::string floor_root(const std::string& m_decimal, std::uint64_t b);
std::uint64_t floor_root(std::uint64_t m, std::uint64_t b);

/// floor(n^c). Exact mode: floor_root(n^a, b); with FastPath::Enabled a
/// long-double estimate is accepted when n^c is at least 1e-4 away from an
/// integer. Real mode: interval evaluation escalating per policy.
std::uint64_t floor_pow(std::uint64_t n, const Exponent& c, const PrecisionPolicy& policy = {},
                        FastPath fast = FastPath::Enabled);

/// floor((p/q)^c) for p >= q >= 1; used for the (X/2)^c boundaries.
std::uint64_t floor_pow_ratio(std::uint64_t p, std::uint64_t q, const Exponent& c,
                              const PrecisionPolicy& policy = {});

/// floor(n^(num/den)) for any non-negative rational exponent, decided exactly.
std::uint64_t floor_rational_power(std::uint64_t n, Rational e);

/// Ordering of n^c against m.
std::strong_ordering cmp_pow(std::uint64_t n, const Exponent& c, std::uint64_t m,
                             const PrecisionPolicy& policy = {});

/// #{n : n_lo < n <= n_hi, m <= n^c < m+1}.
std::uint64_t count_n_in_pow_window(std::uint64_t m, const Exponent& c, std::uint64_t n_lo,
                                    std::uint64_t n_hi, const PrecisionPolicy& policy = {});

/// Smallest n >= 1 with n^c >= m (m >= 1); boundaries decided by cmp_pow.
std::uint64_t first_n_reaching(std::uint64_t m, const Exponent& c, const PrecisionPolicy& policy = {});

}  // namespace psfree
