#pragma once

#include <cstdint>
#include <string>

namespace psfree {

/// A decimal value with a proven enclosure: the true quantity lies in
/// [value - errorBound, value + errorBound].
struct RigorousValue {
  std::string value;      // 40 significant digits
  double error_bound = 0; // rounded upward
  std::string derivation;

  long double approx() const { return std::stold(value); }
  double lower() const;
  double upper() const;
  bool overlaps(const RigorousValue& other) const;
};

/// prod_{p <= P} (1 - 2/p^2) with directed rounding, plus the tail factor
/// prod_{p > P} in [exp(-(2/P + 4/(3P^3))), 1]. Requires P >= 3.
RigorousValue sigma_euler_product(std::uint64_t prime_cutoff);

/// 6/pi^2 from MPFR's pi, enclosure width below 1e-30.
RigorousValue reciprocal_zeta2();

/// prod_{p <= P} (1 - 1/p^2) with tail factor in [exp(-(1/P + 1/(3P^3))), 1].
/// Independent route to 6/pi^2.
RigorousValue zeta2_inverse_euler_product(std::uint64_t prime_cutoff);

/// sum over coprime (d, t) with dt <= z of mu(d) mu(t) / (d^2 t^2),
/// accumulated in long double with compensated summation.
long double coprime_double_sum(std::uint64_t z);

}  // namespace psfree
