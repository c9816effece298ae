#include "psfree/exponent.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mpfr_util.hpp"

namespace psfree {

namespace {

std::uint64_t parse_u64(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("malformed exponent: '" + std::string(whole) + "'");
  std::uint64_t v = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw std::invalid_argument("malformed exponent: '" + std::string(whole) + "'");
    auto d = static_cast<std::uint64_t>(ch - '0');
    if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10)
      throw std::invalid_argument("exponent too large to represent: '" + std::string(whole) + "'");
    v = v * 10 + d;
  }
  return v;
}

}  // namespace

Exponent::Exponent(std::uint64_t a, std::uint64_t b, ExponentMode mode) : mode_(mode) {
  if (a == 0 || b == 0) throw std::invalid_argument("exponent numerator and denominator must be positive");
  const auto g = std::gcd(a, b);
  a_ = a / g;
  b_ = b / g;
  if (a_ < b_) throw std::invalid_argument("exponent must satisfy c >= 1, got " + to_string());
  if (mode_ == ExponentMode::RealInterval) {
    detail::Mpfr x(200);
    detail::set_u64(x.get(), a_, MPFR_RNDN);
    mpfr_div_ui(x.get(), x.get(), static_cast<unsigned long>(b_), MPFR_RNDN);
    real_approx_ = detail::to_decimal(x.get(), 50);
  }
}

Exponent Exponent::rational(std::uint64_t a, std::uint64_t b) {
  return Exponent(a, b, ExponentMode::ExactRational);
}

Exponent Exponent::real(std::uint64_t a, std::uint64_t b) {
  return Exponent(a, b, ExponentMode::RealInterval);
}

Exponent Exponent::parse(std::string_view text, ExponentMode mode) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Exponent(parse_u64(text.substr(0, slash), text), parse_u64(text.substr(slash + 1), text), mode);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Exponent(parse_u64(text, text), 1, mode);
  std::string digits(text.substr(0, dot));
  std::string_view frac = text.substr(dot + 1);
  digits.append(frac);
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) {
    if (den > std::numeric_limits<std::uint64_t>::max() / 10)
      throw std::invalid_argument("exponent has too many decimals: '" + std::string(text) + "'");
    den *= 10;
  }
  if (frac.empty() || dot == 0) throw std::invalid_argument("malformed exponent: '" + std::string(text) + "'");
  return Exponent(parse_u64(digits, text), den, mode);
}

bool Exponent::theorem_range() const {
  // 1 < a/b < 7/6, compared without division; a, b < 2^64 so use 128-bit products.
  const auto a = static_cast<unsigned __int128>(a_);
  const auto b = static_cast<unsigned __int128>(b_);
  return a > b && 6 * a < 7 * b;
}

std::string Exponent::to_string() const {
  return std::to_string(a_) + "/" + std::to_string(b_);
}

void PrecisionPolicy::validate() const {
  if (start_bits < 64) throw std::invalid_argument("PrecisionPolicy: start_bits must be >= 64");
  if (max_bits < start_bits) throw std::invalid_argument("PrecisionPolicy: max_bits must be >= start_bits");
  if (!(escalation_factor > 1.0)) throw std::invalid_argument("PrecisionPolicy: escalation_factor must be > 1");
}

}  // namespace psfree
