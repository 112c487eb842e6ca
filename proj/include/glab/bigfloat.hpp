#pragma once

// Thin RAII wrapper over an MPFR value, used where a result must be
// re-checked well beyond pair precision (Gronwall margins near zero, exact
// big-integer verification of extremal numbers).

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>

#include "glab/ddreal.hpp"

namespace glab {

using BigInt = mpz_class;

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = 256);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat from_int(const BigInt& v, mpfr_prec_t bits = 256);
  static BigFloat from_u64(std::uint64_t v, mpfr_prec_t bits = 256);
  static BigFloat from_dd(const DDReal& v, mpfr_prec_t bits = 256);
  static BigFloat euler_gamma(mpfr_prec_t bits = 256);

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.value_, b.value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Nearest pair value (hi rounded to nearest, lo the rounded residual).
  DDReal to_dd() const;
  int sign() const { return mpfr_sgn(value_); }
  std::string to_string(int digits = 40) const;

 private:
  mpfr_t value_;
};

BigFloat log(const BigFloat& a);
BigFloat exp(const BigFloat& a);
BigFloat sqrt(const BigFloat& a);

}  // namespace glab
