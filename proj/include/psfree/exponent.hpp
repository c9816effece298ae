#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace psfree {

struct Rational {
  std::uint64_t num = 1;
  std::uint64_t den = 1;

  long double value() const { return static_cast<long double>(num) / static_cast<long double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class ExponentMode { ExactRational, RealInterval };

/// The exponent c of the sequence [n^c], held as a reduced fraction a/b.
///
/// In ExactRational mode every floor and comparison is decided on big
/// integers (n^c >= m  <=>  n^a >= m^b). In RealInterval mode the same
/// value is enclosed by MPFR intervals of increasing precision; a/b is kept
/// alongside so an interval that traps an exact integer value of n^c can be
/// resolved instead of escalating forever.
class Exponent {
 public:
  /// Reduces a/b. Requires a >= b > 0 (c >= 1).
  static Exponent rational(std::uint64_t a, std::uint64_t b);
  static Exponent real(std::uint64_t a, std::uint64_t b);

  /// Accepts "a/b" or a plain decimal such as "1.1" (read as 11/10).
  static Exponent parse(std::string_view text, ExponentMode mode = ExponentMode::ExactRational);

  std::uint64_t numerator() const { return a_; }
  std::uint64_t denominator() const { return b_; }
  ExponentMode mode() const { return mode_; }
  bool is_exact() const { return mode_ == ExponentMode::ExactRational; }

  Rational as_rational() const { return {a_, b_}; }
  Rational gamma() const { return {b_, a_}; }
  long double value() const { return as_rational().value(); }
  long double gamma_value() const { return gamma().value(); }

  /// 1 < c < 7/6.
  bool theorem_range() const;

  /// Decimal expansion of c to 50 significant digits; empty in exact mode.
  const std::string& real_approx() const { return real_approx_; }

  /// "a/b", the canonical text form used in reports.
  std::string to_string() const;

  friend bool operator==(const Exponent& x, const Exponent& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.mode_ == y.mode_;
  }

 private:
  Exponent(std::uint64_t a, std::uint64_t b, ExponentMode mode);

  std::uint64_t a_;
  std::uint64_t b_;
  ExponentMode mode_;
  std::string real_approx_;
};

struct PrecisionPolicy {
  unsigned start_bits = 128;
  unsigned max_bits = 4096;
  double escalation_factor = 2.0;

  /// Throws std::invalid_argument unless 64 <= start_bits <= max_bits and factor > 1.
  void validate() const;
};

}  // namespace psfree
