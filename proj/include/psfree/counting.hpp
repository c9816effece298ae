#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psfree/constants.hpp"
#include "psfree/exactpow.hpp"
#include "psfree/exponent.hpp"

namespace psfree {

enum class SumKind { Carlitz, CaoZhai, ScPair };

std::string to_string(SumKind kind);
/// Accepts "carlitz", "caozhai"/"caoZhai", "scpair"/"scPair".
SumKind parse_sum_kind(std::string_view text);

struct CountReport {
  SumKind sum_kind = SumKind::Carlitz;
  std::uint64_t X = 0;
  std::optional<Exponent> c;  // absent for carlitz
  std::uint64_t count = 0;
  double elapsed = 0;         // seconds
};

/// sum_{n <= X} mu^2(n) mu^2(n+1).
CountReport carlitz_count(std::uint64_t X);
/// sum_{n <= X} mu^2([n^c]).
CountReport cao_zhai_count(std::uint64_t X, const Exponent& c, const PrecisionPolicy& policy = {});
/// sum_{X/2 < n <= X} mu^2([n^c]) mu^2([n^c] + 1); n runs from floor(X/2) + 1.
CountReport sc_count(std::uint64_t X, const Exponent& c, const PrecisionPolicy& policy = {});

/// a^{-1} mod m in [1, m-1] by extended Euclid; throws NotInvertible when gcd(a, m) != 1.
std::uint64_t mod_inverse(std::int64_t a, std::uint64_t m);

/// The integers k with lo < k <= hi and k = residue (mod modulus), ascending.
class Progression {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = std::uint64_t;
    using difference_type = std::ptrdiff_t;
    using pointer = const std::uint64_t*;
    using reference = std::uint64_t;

    iterator() = default;
    iterator(std::uint64_t value, std::uint64_t step) : value_(value), step_(step) {}
    std::uint64_t operator*() const { return value_; }
    iterator& operator++() {
      value_ += step_;
      return *this;
    }
    iterator operator++(int) {
      auto old = *this;
      ++*this;
      return old;
    }
    friend bool operator==(const iterator& x, const iterator& y) { return x.value_ == y.value_; }

   private:
    std::uint64_t value_ = 0;
    std::uint64_t step_ = 1;
  };

  Progression(std::uint64_t first, std::uint64_t count, std::uint64_t step)
      : first_(first), count_(count), step_(step) {}

  std::uint64_t count() const { return count_; }
  std::uint64_t first() const { return first_; }
  std::uint64_t step() const { return step_; }
  iterator begin() const { return {first_, step_}; }
  iterator end() const { return {first_ + count_ * step_, step_}; }

 private:
  std::uint64_t first_;
  std::uint64_t count_;
  std::uint64_t step_;
};

/// Integer bounds: lo exclusive, hi inclusive. Requires residue < modulus.
Progression count_k_in_progression(std::uint64_t lo, std::uint64_t hi, std::uint64_t modulus,
                                   std::uint64_t residue);
/// Real bounds (kLo, kHi]; equivalent to the integer form with floor(kLo), floor(kHi).
Progression count_k_in_progression(long double k_lo, long double k_hi, std::uint64_t modulus,
                                   std::uint64_t residue);

/// Split point for the (d, t) double sum: a pair goes to S1 iff dt <= z.
/// Use std::numeric_limits<double>::infinity() to put every pair in S1.
struct ZSplit {
  double z = 0;
  std::uint64_t threshold() const;  // floor(z), saturating
};

/// Largest d and t visited; 0 picks the natural limits d^2 <= X^c + 1 and
/// t^2 <= X^c + 2. Larger values must leave every sum unchanged.
struct Truncation {
  std::uint64_t d_max = 0;
  std::uint64_t t_max = 0;
};

/// S1/S2 for one split point, under both k-range conventions:
///  - pre-adjusted: ((X/2)^c - 1)/d^2 < k <= X^c/d^2, which recombines to S_c(X) exactly;
///  - displayed:    (X/2)^c/d^2 < k <= X^c/d^2, which drops the m = floor((X/2)^c) sliver.
struct KSums {
  std::int64_t s1 = 0;
  std::int64_t s2 = 0;
  std::int64_t s1_displayed = 0;
  std::int64_t s2_displayed = 0;
};

/// One pass over (d, t) serving several split points at once.
std::vector<KSums> k_sums(std::uint64_t X, const Exponent& c, std::span<const ZSplit> splits,
                          Truncation truncation = {}, const PrecisionPolicy& policy = {});

/// z = X^{(2c-1)/4}.
double z_split(std::uint64_t X, const Exponent& c);
/// floor(X^{(2c-1)/4}), decided exactly.
std::uint64_t z_split_floor(std::uint64_t X, const Exponent& c);

/// Pre-adjusted S1 and S2; z defaults to z_split.
std::int64_t s1_term(std::uint64_t X, const Exponent& c, std::optional<double> z_override = {},
                     const PrecisionPolicy& policy = {});
std::int64_t s2_term(std::uint64_t X, const Exponent& c, std::optional<double> z_override = {},
                     const PrecisionPolicy& policy = {});

/// Independent evaluation of the displayed-range boundary sliver: the
/// contribution of m = floor((X/2)^c) through the divisor sums over d^2 | m
/// and t^2 | m+1.
std::int64_t displayed_boundary(std::uint64_t X, const Exponent& c, const PrecisionPolicy& policy = {});

struct DecompositionReport {
  std::uint64_t X = 0;
  Exponent c = Exponent::rational(3, 2);
  double z = 0;
  std::int64_t s1 = 0;
  std::int64_t s2 = 0;
  std::int64_t boundary = 0;  // zero by construction for the pre-adjusted range
  std::uint64_t direct = 0;
  bool identity_holds = false;

  struct Displayed {
    std::int64_t s1 = 0;
    std::int64_t s2 = 0;
    std::int64_t boundary = 0;
    bool identity_holds = false;
  } displayed;
};

DecompositionReport decompose(std::uint64_t X, const Exponent& c, std::optional<double> z_override = {},
                              const PrecisionPolicy& policy = {});

struct ErrorSample {
  SumKind sum_kind = SumKind::ScPair;
  std::uint64_t X = 0;
  std::optional<Exponent> c;
  std::uint64_t count = 0;
  long double main_term = 0;
  long double error = 0;
  long double normalized_error = 0;
  double main_term_uncertainty = 0;  // constant's errorBound times the main-term coefficient
  double elapsed = 0;
};

/// Exponent of X the error is normalised by: (6c+1)/8 for scPair, 2/3 for
/// carlitz, 1 for caoZhai.
double reference_exponent(SumKind kind, const std::optional<Exponent>& c);

/// Main term coefficient times X: sigma X (carlitz), (6/pi^2) X (caoZhai), sigma X / 2 (scPair).
/// `constant` must be the matching RigorousValue.
ErrorSample error_sample(const CountReport& report, const RigorousValue& constant);
ErrorSample error_sample(std::uint64_t X, const Exponent& c, const RigorousValue& sigma,
                         const PrecisionPolicy& policy = {});

}  // namespace psfree
