#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "psfree/constants.hpp"
#include "psfree/reference.hpp"

using namespace psfree;

namespace {

// sum_{n <= z} mu(n) 2^omega(n) / n^2: grouping coprime (d, t) by n = dt,
// every squarefree n splits its primes between d and t in 2^omega(n) ways.
long double coprime_sum_oracle(std::uint64_t z) {
  long double sum = 0;
  for (std::uint64_t n = z; n >= 1; --n) {  // small terms first
    const int mu = reference::mobius(n);
    if (mu == 0) continue;
    int omega = 0;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        ++omega;
        m /= p;
      }
    if (m > 1) ++omega;
    sum += static_cast<long double>(mu) * std::ldexp(1.0L, omega) / (static_cast<long double>(n) * n);
  }
  return sum;
}

}  // namespace

TEST_CASE("two-factor product") {
  const auto v = sigma_euler_product(3);
  CHECK(std::abs(v.approx() - 7.0L / 18.0L) < 1e-30L);
  CHECK(v.error_bound >= 7.0 / 18.0 - 0.3226340989);
  CHECK(v.lower() <= 0.3226340989);
  CHECK_FALSE(v.derivation.empty());
  CHECK_THROWS_AS(sigma_euler_product(2), std::invalid_argument);
}

TEST_CASE("sigma at 1e6 and 1e7") {
  const auto a = sigma_euler_product(1'000'000);
  const auto b = sigma_euler_product(10'000'000);
  CHECK(a.error_bound <= 3e-6);
  CHECK(a.error_bound > 0);
  CHECK(b.error_bound < a.error_bound);
  CHECK(a.overlaps(b));
  CHECK(std::abs(a.approx() - b.approx()) <= a.error_bound + b.error_bound);
  CHECK(std::abs(static_cast<double>(b.approx()) - 0.3226340989) <= 1e-8);
  CHECK(a.value.size() >= 40);
}

TEST_CASE("sigma finite products decrease and all enclosures intersect") {
  long double prev = 1;
  RigorousValue first = sigma_euler_product(3);
  for (std::uint64_t P : {3ULL, 10ULL, 100ULL, 1000ULL, 10'000ULL, 100'000ULL}) {
    const auto v = sigma_euler_product(P);
    CHECK(v.approx() <= prev);
    CHECK(v.overlaps(first));
    CHECK(v.error_bound >= 0);
    prev = v.approx();
  }
}

TEST_CASE("sigma does not depend on the thread count") {
  // chunk boundaries are fixed, so the 40-digit value is reproducible
  CHECK(sigma_euler_product(200'000).value == sigma_euler_product(200'000).value);
}

TEST_CASE("6/pi^2 two ways") {
  const auto exact = reciprocal_zeta2();
  CHECK(exact.value.rfind("6.07927101854", 0) == 0);
  CHECK(exact.error_bound < 1e-30);
  const auto product = zeta2_inverse_euler_product(1'000'000);
  CHECK(product.overlaps(exact));
  CHECK(product.error_bound < 1e-6);
}

TEST_CASE("coprime double sum small cases") {
  CHECK(coprime_double_sum(1) == 1.0L);
  CHECK(std::abs(coprime_double_sum(2) - 0.5L) < 1e-18L);
  // z = 3: 1 - 1/4 - 1/4 - 1/9 - 1/9
  CHECK(std::abs(coprime_double_sum(3) - (1.0L - 0.5L - 2.0L / 9.0L)) < 1e-18L);
  // z = 6 adds (1,5), (5,1): -2/25 and (1,6), (6,1), (2,3), (3,2): +4/36
  CHECK(std::abs(coprime_double_sum(6) - (1.0L - 0.5L - 2.0L / 9.0L - 2.0L / 25.0L + 4.0L / 36.0L)) < 1e-18L);
}

TEST_CASE("coprime double sum matches the mu 2^omega oracle") {
  for (std::uint64_t z : {10ULL, 97ULL, 1000ULL, 10'000ULL, 50'000ULL}) {
    CHECK(std::abs(coprime_double_sum(z) - coprime_sum_oracle(z)) < 1e-15L);
  }
}

TEST_CASE("coprime double sum converges to sigma") {
  const long double sigma = sigma_euler_product(10'000'000).approx();
  for (std::uint64_t z : {100ULL, 1000ULL, 10'000ULL}) {
    const long double err = std::abs(coprime_double_sum(z) - sigma);
    CHECK(err <= 20.0L * std::log(static_cast<long double>(z)) / z);
  }
  CHECK(std::abs(coprime_double_sum(10'000) - sigma_euler_product(1'000'000).approx()) <= 5e-3L);
}
