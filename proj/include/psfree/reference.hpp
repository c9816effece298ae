#pragma once

// Serial, deliberately plain implementations of the parallel kernels. They
// share no sieve, chunking or progression code with the fast paths and exist
// to be compared against them in tests and in the benchmark.

#include <complex>
#include <cstdint>
#include <vector>

#include "psfree/counting.hpp"
#include "psfree/expsum.hpp"
#include "psfree/exponent.hpp"

namespace psfree::reference {

/// Trial division.
bool is_squarefree(std::uint64_t m);
int mobius(std::uint64_t m);
std::uint64_t tau(std::uint64_t m);
std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

/// Per-n loops over floor_pow without the fast path, squarefreeness by trial division.
std::uint64_t carlitz_count(std::uint64_t X);
std::uint64_t cao_zhai_count(std::uint64_t X, const Exponent& c);
std::uint64_t sc_count(std::uint64_t X, const Exponent& c);

/// S1/S2 (pre-adjusted range) scanning every k and testing k d^2 + 1 = 0 (mod t^2) directly.
KSums k_sums(std::uint64_t X, const Exponent& c, std::uint64_t z_threshold);

/// One term at a time, plain double accumulation.
std::complex<double> eval_H(const ExpSumInstance& inst);

/// Double-loop count #{(d, t) : dt <= z}.
std::uint64_t divisor_pairs(std::uint64_t z);

}  // namespace psfree::reference
