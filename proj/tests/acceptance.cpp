// End-to-end checks at the tolerances the project promises. One line per
// check; exit status is non-zero if any check fails.

#include <gmp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "psfree/constants.hpp"
#include "psfree/counting.hpp"
#include "psfree/exactpow.hpp"
#include "psfree/expsum.hpp"
#include "psfree/scan.hpp"
#include "psfree/sieve.hpp"

using namespace psfree;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.pass) ++failures;
  std::printf("%s %2d %-30s %8.2fs %s\n", out.pass ? "PASS" : "FAIL", id, name, secs, out.detail.str().c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::uint64_t gmp_floor_pow(std::uint64_t n, std::uint64_t a, std::uint64_t b) {
  mpz_t x;
  mpz_init(x);
  mpz_ui_pow_ui(x, n, a);
  mpz_root(x, x, b);
  const std::uint64_t r = mpz_get_ui(x);
  mpz_clear(x);
  return r;
}

}  // namespace

int main() {
  const auto c1120 = Exponent::rational(21, 20);
  const auto c1110 = Exponent::rational(11, 10);
  const auto c76 = Exponent::rational(7, 6);
  const auto c32 = Exponent::rational(3, 2);

  // criterion 4 supplies sigma for the others
  const auto sigma_p7 = sigma_euler_product(10'000'000);
  const double sigma = static_cast<double>(sigma_p7.approx());

  criterion(1, "carlitz density", [&](Outcome& o) {
    const auto t = std::chrono::steady_clock::now();
    const auto r = carlitz_count(10'000'000);
    const double secs = seconds_since(t);
    const double density = static_cast<double>(r.count) / 1e7;
    o.detail << "count=" << r.count << " density=" << density << " sigma=" << sigma << " t=" << secs << "s";
    o.require(std::abs(density - sigma) <= 0.01, "|density - sigma| <= 0.01");
    o.require(secs < 30, "runtime < 30 s");
    o.require(carlitz_count(10).count == 5, "carlitz_count(10) = 5");
  });

  criterion(2, "cao-zhai density", [&](Outcome& o) {
    const double inv_zeta2 = static_cast<double>(reciprocal_zeta2().approx());
    const auto t = std::chrono::steady_clock::now();
    const auto r = cao_zhai_count(1'000'000, c1110);
    const double secs = seconds_since(t);
    const double density = static_cast<double>(r.count) / 1e6;
    o.detail << "count=" << r.count << " density=" << density << " 6/pi^2=" << inv_zeta2 << " t=" << secs << "s";
    o.require(std::abs(density - inv_zeta2) <= 0.01, "|density - 6/pi^2| <= 0.01");
    o.require(secs < 120, "runtime < 2 min");
    o.require(cao_zhai_count(10, c32).count == 7, "cao_zhai_count(10, 3/2) = 7");
  });

  criterion(3, "pair count grid", [&](Outcome& o) {
    const auto t = std::chrono::steady_clock::now();
    double worst_density = 0, worst_ratio = 0;
    for (const auto& c : {c1120, c1110}) {
      for (std::uint64_t X : {100'000ULL, 1'000'000ULL, 10'000'000ULL}) {
        const auto s = error_sample(X, c, sigma_p7);
        const double dev = std::abs(2.0 * static_cast<double>(s.count) / static_cast<double>(X) - sigma);
        const double bound = 10.0 * std::pow(static_cast<double>(X), (6.0 * static_cast<double>(c.value()) + 1) / 8);
        worst_density = std::max(worst_density, dev);
        worst_ratio = std::max(worst_ratio, std::abs(static_cast<double>(s.error)) / bound);
        o.require(dev <= 0.02, "density at X=" + std::to_string(X) + " c=" + c.to_string());
        o.require(std::abs(static_cast<double>(s.error)) <= bound, "error bound at X=" + std::to_string(X) + " c=" + c.to_string());
      }
    }
    const double secs = seconds_since(t);
    o.detail << "max|2S/X - sigma|=" << worst_density << " max|error|/(10 X^((6c+1)/8))=" << worst_ratio
             << " t=" << secs << "s";
    o.require(secs < 900, "runtime < 15 min");
  });

  criterion(4, "sigma constant", [&](Outcome& o) {
    const auto t = std::chrono::steady_clock::now();
    const auto p6 = sigma_euler_product(1'000'000);
    const auto p7 = sigma_euler_product(10'000'000);
    const double secs = seconds_since(t);
    const double off = std::abs(static_cast<double>(p7.approx()) - 0.3226340989);
    o.detail << "P=1e6 " << p6.value.substr(0, 14) << "+-" << p6.error_bound << "  P=1e7 " << p7.value.substr(0, 14)
             << "+-" << p7.error_bound << "  |value - 0.3226340989|=" << off << " t=" << secs << "s";
    o.require(p6.overlaps(p7), "intervals overlap");
    o.require(off <= 1e-8, "value within 1e-8");
    o.require(secs < 60, "runtime < 1 min");
  });

  criterion(5, "coprime double sum", [&](Outcome& o) {
    const long double v = coprime_double_sum(10'000);
    const double diff = std::abs(static_cast<double>(v) - sigma);
    o.detail << "sum(z=1e4)=" << static_cast<double>(v) << " |diff|=" << diff;
    o.require(diff <= 5e-3, "|sum - sigma| <= 5e-3");
  });

  criterion(6, "exact decomposition", [&](Outcome& o) {
    const auto t = std::chrono::steady_clock::now();
    for (std::uint64_t X : {1000ULL, 10'000ULL}) {
      for (const auto& c : {c1120, c1110}) {
        const auto direct = static_cast<std::int64_t>(sc_count(X, c).count);
        const std::vector<ZSplit> splits{{1.0}, {z_split(X, c)}, {std::numeric_limits<double>::infinity()}};
        const auto sums = k_sums(X, c, splits);
        const auto s1 = s1_term(X, c), s2 = s2_term(X, c);
        o.detail << "X=" << X << " c=" << c.to_string() << " direct=" << direct << " s1+s2=" << s1 + s2 << "; ";
        o.require(s1 + s2 == direct, "s1 + s2 = sc_count at X=" + std::to_string(X) + " c=" + c.to_string());
        for (const auto& s : sums)
          o.require(s.s1 + s.s2 == direct, "z-invariance at X=" + std::to_string(X) + " c=" + c.to_string());
      }
    }
    const double secs = seconds_since(t);
    o.detail << "t=" << secs << "s";
    o.require(secs < 120, "runtime < 2 min");
  });

  criterion(7, "divisor lattice identity", [&](Outcome& o) {
    for (std::uint64_t z : {100ULL, 1000ULL, 10'000ULL}) {
      std::uint64_t pairs = 0;
      for (std::uint64_t d = 1; d <= z; ++d)
        for (std::uint64_t t = 1; d * t <= z; ++t) ++pairs;
      const auto sum = divisor_summatory(z);
      o.detail << "z=" << z << ":" << sum << "/" << pairs << " ";
      o.require(sum == pairs, "z=" + std::to_string(z));
    }
  });

  criterion(8, "exactpow oracle equivalence", [&](Outcome& o) {
    std::uint64_t checked = 0;
    for (const auto& c : {c1120, c1110, c76, c32}) {
      const auto real = Exponent::real(c.numerator(), c.denominator());
      std::uint64_t bad = 0;
      for (std::uint64_t n = 1; n <= 100'000; ++n) {
        const auto exact = floor_pow(n, c);
        if (exact != floor_pow(n, real) || exact != gmp_floor_pow(n, c.numerator(), c.denominator())) ++bad;
        ++checked;
      }
      o.require(bad == 0, std::to_string(bad) + " mismatches for c=" + c.to_string());
    }
    std::mt19937_64 rng(20240101);
    const std::vector<Exponent> cs{c1120, c1110, c76, c32};
    int windows_ok = 0;
    for (int i = 0; i < 100; ++i) {
      const auto& c = cs[rng() % cs.size()];
      const std::uint64_t n_lo = rng() % 100'000;
      const std::uint64_t n_hi = n_lo + 1 + rng() % 1000;
      std::uint64_t total = 0;
      for (std::uint64_t m = floor_pow(n_lo + 1, c); m <= floor_pow(n_hi, c); ++m)
        total += count_n_in_pow_window(m, c, n_lo, n_hi);
      windows_ok += total == n_hi - n_lo;
    }
    o.detail << "floor_pow values checked=" << checked << " partition windows ok=" << windows_ok << "/100";
    o.require(windows_ok == 100, "partition invariant");
  });

  criterion(9, "van der Corput empirical", [&](Outcome& o) {
    const auto instances = sample_instances(20240101, 100, c1110, 1000, 100'000);
    double worst = 0;
    std::size_t nonempty = 0;
    for (const auto& inst : instances) {
      const auto terms = inst.l_range().size();
      const double abs_h = std::abs(eval_H(inst));
      o.require(abs_h <= static_cast<double>(terms) + 1e-9, "|H| <= #terms");
      if (terms == 0) continue;
      ++nonempty;
      const auto lam = second_derivative_range(inst);
      const double bound = vdc_bound(static_cast<double>(terms), lam.lambda_min);
      worst = std::max(worst, abs_h / bound);
      o.require(abs_h <= 10 * bound, "|H| <= 10 vdc_bound");
    }
    o.detail << "instances=" << instances.size() << " nonempty=" << nonempty << " max|H|/vdc_bound=" << worst;
    o.require(instances.size() == 100, "100 instances");
  });

  criterion(10, "psi truncation", [&](Outcome& o) {
    for (std::uint64_t M : {10ULL, 100ULL, 1000ULL}) {
      const auto check = psi_truncation_check(M, 10'000, 1e-3, 4.0);
      o.detail << "M=" << M << " max|err|*M*||x||=" << check.max_scaled_error << " ";
      o.require(check.within_bound, "envelope at M=" + std::to_string(M));
      o.require(psi_truncated(0.5, M) == 0.0, "psi_truncated(0.5) = 0 at M=" + std::to_string(M));
    }
  });

  criterion(11, "error exponent fit", [&](Outcome& o) {
    for (auto [exponent, scale] : {std::pair{0.5, 1.0}, std::pair{0.8, 7.0}}) {
      std::vector<ErrorSample> planted;
      for (std::uint64_t X = 1000; X <= 10'000'000; X *= 2) {
        ErrorSample s;
        s.X = X;
        s.c = c1110;
        s.error = scale * std::pow(static_cast<long double>(X), static_cast<long double>(exponent));
        planted.push_back(s);
      }
      const auto fit = fit_error_exponent(planted);
      o.require(std::abs(fit.slope - exponent) <= 1e-9, "planted slope " + std::to_string(exponent));
      o.require(std::abs(fit.intercept - std::log(scale)) <= 1e-9, "planted intercept");
    }

    ScanConfig cfg;
    cfg.c = c1110;
    cfg.sum_kind = SumKind::ScPair;
    cfg.x_start = 1000;
    cfg.x_stop = 10'000'000;
    cfg.grid_factor = std::pow(10.0, 0.25);
    cfg.output_path = std::filesystem::temp_directory_path() / "psfree_acceptance_scan.csv";
    std::filesystem::remove(cfg.output_path);
    const auto scan = run_scan(cfg);
    const auto fit = fit_error_exponent(scan.samples);
    o.detail << "scan points=" << scan.samples.size() << " last X=" << scan.samples.back().X
             << " used=" << fit.points_used << " slope=" << fit.slope << " reference=" << fit.reference_exponent;
    o.require(scan.samples.back().X == 10'000'000, "scan reaches X = 1e7");
    o.require(fit.slope <= 0.9 + 0.05, "slope <= 0.95");
  });

  std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
