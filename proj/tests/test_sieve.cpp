#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "psfree/reference.hpp"
#include "psfree/sieve.hpp"

using namespace psfree;

TEST_CASE("primes_up_to") {
  CHECK(primes_up_to(2) == std::vector<std::uint32_t>{2});
  CHECK(primes_up_to(10) == std::vector<std::uint32_t>{2, 3, 5, 7});
  CHECK(primes_up_to(1'000'000).size() == 78498);
  CHECK(primes_up_to(100'000) == reference::primes_up_to(100'000));
  CHECK_THROWS_AS(primes_up_to(1), std::invalid_argument);
}

TEST_CASE("sieving_primes covers p^2 < hi") {
  CHECK(sieving_primes(4).empty());
  CHECK(sieving_primes(5) == std::vector<std::uint32_t>{2});
  CHECK(sieving_primes(26) == std::vector<std::uint32_t>{2, 3, 5});
  CHECK(sieving_primes(25) == std::vector<std::uint32_t>{2, 3});
}

TEST_CASE("isqrt") {
  for (std::uint64_t n = 0; n < 100'000; ++n) {
    const auto r = isqrt(n);
    CHECK((r * r <= n && (r + 1) * (r + 1) > n));
  }
  CHECK(isqrt(UINT64_MAX) == 4294967295ULL);
  CHECK(isqrt(4294967296ULL * 4294967296ULL - 1) == 4294967295ULL);
}

TEST_CASE("squarefree window examples") {
  CHECK(squarefree_window(8, 9).values == std::vector<std::int32_t>{0});
  CHECK(squarefree_window(10, 11).values == std::vector<std::int32_t>{1});
  CHECK(squarefree_window(0, 1).values == std::vector<std::int32_t>{0});
  CHECK(count_squarefree(1, 1'000'001) == 607926);
  CHECK(count_squarefree(1, 1'000'001, 1000) == 607926);
}

TEST_CASE("mobius window examples") {
  const auto w = mobius_window(0, 31);
  CHECK(w.at(0) == 0);
  CHECK(w.at(1) == 1);
  CHECK(w.at(6) == 1);
  CHECK(w.at(30) == -1);
  CHECK(w.at(4) == 0);

  const auto big = mobius_window(1, 10'001);
  std::int64_t mertens = 0, oracle = 0;
  for (std::uint64_t m = 1; m <= 10'000; ++m) {
    mertens += big.at(m);
    oracle += reference::mobius(m);
  }
  CHECK(mertens == oracle);
  CHECK(mertens == -23);
}

TEST_CASE("divisor window examples") {
  const auto w = divisor_window(1, 13);
  CHECK(w.at(1) == 1);
  CHECK(w.at(12) == 6);
  CHECK_THROWS_AS(divisor_window(0, 5), std::invalid_argument);
  CHECK(divisor_summatory(1000) == reference::divisor_pairs(1000));
}

TEST_CASE("windows match trial division far from the origin") {
  const std::uint64_t lo = 999'999'000'000ULL, hi = lo + 3000;
  const auto sf = squarefree_window(lo, hi);
  const auto mu = mobius_window(lo, hi);
  const auto tau = divisor_window(lo, hi);
  for (std::uint64_t m = lo; m < hi; ++m) {
    CHECK(sf.at(m) == (reference::is_squarefree(m) ? 1 : 0));
    CHECK(mu.at(m) == reference::mobius(m));
    CHECK(tau.at(m) == static_cast<std::int32_t>(reference::tau(m)));
  }
}

TEST_CASE("window splitting is consistent across random splits") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t a = 1 + rng() % 10'000'000;
    const std::uint64_t c = a + 1 + rng() % 5000;
    const std::uint64_t b = a + rng() % (c - a + 1);
    for (auto window : {squarefree_window, mobius_window, divisor_window}) {
      const auto whole = window(a, c);
      const auto left = window(a, b);
      const auto right = window(b, c);
      std::vector<std::int32_t> joined = left.values;
      joined.insert(joined.end(), right.values.begin(), right.values.end());
      CHECK(joined == whole.values);
    }
  }
}

TEST_CASE("kinds agree: mu^2 equals the squarefree indicator") {
  const std::uint64_t lo = 5'000'000, hi = lo + 200'000;
  const auto sf = squarefree_window(lo, hi);
  const auto mu = mobius_window(lo, hi);
  bool ok = true;
  for (std::size_t i = 0; i < sf.size(); ++i) {
    ok = ok && (sf.values[i] == 0 || sf.values[i] == 1);
    ok = ok && (mu.values[i] >= -1 && mu.values[i] <= 1);
    ok = ok && sf.values[i] == mu.values[i] * mu.values[i];
  }
  CHECK(ok);
}

TEST_CASE("squarefree density near 6/pi^2") {
  const double X = 1e6;
  const double ratio = static_cast<double>(count_squarefree(1, 1'000'001)) * (M_PI * M_PI / 6.0) / X;
  CHECK(std::abs(ratio - 1.0) <= 0.01);
}

TEST_CASE("divisor summatory equals the lattice-point count") {
  for (std::uint64_t z : {1ULL, 2ULL, 100ULL, 1000ULL, 10'000ULL}) CHECK(divisor_summatory(z) == reference::divisor_pairs(z));
  CHECK(divisor_summatory(10'000, 777) == reference::divisor_pairs(10'000));
}
