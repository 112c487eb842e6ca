#include "glab/bigfloat.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "glab/errors.hpp"

namespace glab {

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::from_int(const BigInt& v, mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_set_z(r.value_, v.get_mpz_t(), MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_u64(std::uint64_t v, mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_set_uj(r.value_, v, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_dd(const DDReal& v, mpfr_prec_t bits) {
  BigFloat r(bits);
  BigFloat lo(bits);
  mpfr_set_d(r.value_, v.hi(), MPFR_RNDN);
  mpfr_set_d(lo.value_, v.lo(), MPFR_RNDN);
  mpfr_add(r.value_, r.value_, lo.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::euler_gamma(mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_const_euler(r.value_, MPFR_RNDN);
  return r;
}

namespace {
mpfr_prec_t joint(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}
}  // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

DDReal BigFloat::to_dd() const {
  const double hi = mpfr_get_d(value_, MPFR_RNDN);
  BigFloat rest(precision());
  mpfr_sub_d(rest.value_, value_, hi, MPFR_RNDN);
  return DDReal::from_pair(hi, mpfr_get_d(rest.value_, MPFR_RNDN));
}

std::string BigFloat::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return buf.data();
}

BigFloat log(const BigFloat& a) {
  if (a.sign() <= 0) throw DomainError("log of a non-positive big float");
  BigFloat r(a.precision());
  mpfr_log(r.get(), a.get(), MPFR_RNDN);
  return r;
}

BigFloat exp(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_exp(r.get(), a.get(), MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
  return r;
}

}  // namespace glab
