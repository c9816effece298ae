// Times each parallel kernel against its serial reference and checks that
// both return the same value.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "psfree/counting.hpp"
#include "psfree/expsum.hpp"
#include "psfree/reference.hpp"

namespace {

template <class F>
double time_it(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void row(const char* name, double fast, double slow, bool agree) {
  std::printf("%-28s parallel %9.4fs  serial %9.4fs  speedup %6.2fx  %s\n", name, fast, slow, slow / fast,
              agree ? "agree" : "MISMATCH");
}

}  // namespace

int main() {
  using namespace psfree;
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
  const auto c = Exponent::rational(11, 10);

  {
    std::uint64_t a = 0, b = 0;
    const double fast = time_it([&] { a = carlitz_count(1'000'000).count; });
    const double slow = time_it([&] { b = reference::carlitz_count(1'000'000); });
    row("carlitz X=1e6", fast, slow, a == b);
  }
  {
    std::uint64_t a = 0, b = 0;
    const double fast = time_it([&] { a = sc_count(200'000, c).count; });
    const double slow = time_it([&] { b = reference::sc_count(200'000, c); });
    row("sc_count X=2e5 c=11/10", fast, slow, a == b);
  }
  {
    std::uint64_t a = 0, b = 0;
    const double fast = time_it([&] { a = cao_zhai_count(200'000, c).count; });
    const double slow = time_it([&] { b = reference::cao_zhai_count(200'000, c); });
    row("cao_zhai X=2e5 c=11/10", fast, slow, a == b);
  }
  {
    KSums a, b;
    const std::uint64_t X = 3000;
    const ZSplit split{static_cast<double>(z_split_floor(X, c))};
    const double fast = time_it([&] { a = k_sums(X, c, std::span(&split, 1)).front(); });
    const double slow = time_it([&] { b = reference::k_sums(X, c, z_split_floor(X, c)); });
    row("k_sums X=3e3 c=11/10", fast, slow, a.s1 == b.s1 && a.s2 == b.s2);
  }
  {
    ExpSumInstance inst{1, 7, 1'000'000, c};
    std::complex<double> a, b;
    const double fast = time_it([&] { a = eval_H(inst); });
    const double slow = time_it([&] { b = reference::eval_H(inst); });
    row("eval_H X=1e6 t=1 h=7", fast, slow, std::abs(a - b) <= 1e-6 * (1.0 + std::abs(b)));
  }
  return 0;
}
