#pragma once

#include <cstdint>
#include <gmp.h>
#include <mpfr.h>

#include <string>

namespace psfree::detail {

/// Owning wrapper around mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

/// Owning wrapper around mpz_t.
class Mpz {
 public:
  Mpz() { mpz_init(v_); }
  explicit Mpz(unsigned long x) { mpz_init_set_ui(v_, x); }
  ~Mpz() { mpz_clear(v_); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;

  mpz_ptr get() { return v_; }
  mpz_srcptr get() const { return v_; }

 private:
  mpz_t v_;
};

inline void set_u64(mpz_ptr z, unsigned long long x) {
  static_assert(sizeof(unsigned long) == 8, "LP64 platform expected");
  mpz_set_ui(z, static_cast<unsigned long>(x));
}

inline void set_u64(mpfr_ptr f, unsigned long long x, mpfr_rnd_t rnd) {
  mpfr_set_ui(f, static_cast<unsigned long>(x), rnd);
}

/// Decimal rendering with the requested number of significant digits.
inline std::string to_decimal(mpfr_srcptr x, int digits, mpfr_rnd_t rnd = MPFR_RNDN) {
  char* buf = nullptr;
  std::string fmt = "%." + std::to_string(digits - 1) + "R*e";
  mpfr_asprintf(&buf, fmt.c_str(), rnd, x);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace psfree::detail
