#pragma once

// Double-double ("pair") arithmetic.
//
// A value is the unevaluated sum hi + lo with |lo| <= ulp(hi)/2, giving
// roughly 106 significand bits (about 32 decimal digits).  The basic
// operations follow the error-free transformations of Dekker and Knuth;
// addition uses the accurate (IEEE-style) variant so that relative error
// stays below 3u^2 even under cancellation.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace glab {

namespace eft {

inline double quick_two_sum(double a, double b, double& err) {
  const double s = a + b;
  err = b - (s - a);
  return s;
}

inline double two_sum(double a, double b, double& err) {
  const double s = a + b;
  const double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

inline void split(double a, double& hi, double& lo) {
  constexpr double kSplitter = 134217729.0;  // 2^27 + 1
  const double t = kSplitter * a;
  hi = t - (t - a);
  lo = a - hi;
}

inline double two_prod(double a, double b, double& err) {
  const double p = a * b;
#if defined(__FMA__)
  err = std::fma(a, b, -p);
#else
  double ah, al, bh, bl;
  split(a, ah, al);
  split(b, bh, bl);
  err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
#endif
  return p;
}

inline double two_sqr(double a, double& err) {
  const double p = a * a;
#if defined(__FMA__)
  err = std::fma(a, a, -p);
#else
  double hi, lo;
  split(a, hi, lo);
  err = ((hi * hi - p) + 2.0 * hi * lo) + lo * lo;
#endif
  return p;
}

}  // namespace eft

class DDReal {
 public:
  constexpr DDReal() = default;
  constexpr DDReal(double x) : hi_(x) {}  // NOLINT: implicit by design of a scalar
  constexpr DDReal(int x) : hi_(x) {}     // NOLINT
  DDReal(std::uint64_t x)  // NOLINT
      : DDReal(from_pair(static_cast<double>(x >> 32) * 4294967296.0,
                         static_cast<double>(x & 0xffffffffu))) {}
  DDReal(std::int64_t x)  // NOLINT
      : DDReal(from_pair(static_cast<double>(x >> 32) * 4294967296.0,
                         static_cast<double>(x & 0xffffffff))) {}

  /// Builds from a (hi, lo) pair, renormalizing.
  static DDReal from_pair(double hi, double lo) {
    DDReal r;
    r.hi_ = eft::two_sum(hi, lo, r.lo_);
    return r;
  }

  double hi() const { return hi_; }
  double lo() const { return lo_; }
  double to_double() const { return hi_ + lo_; }

  bool is_finite() const { return std::isfinite(hi_) && std::isfinite(lo_); }

  DDReal operator-() const { return raw(-hi_, -lo_); }

  friend DDReal operator+(const DDReal& a, const DDReal& b) {
    double s2, t2;
    double s1 = eft::two_sum(a.hi_, b.hi_, s2);
    const double t1 = eft::two_sum(a.lo_, b.lo_, t2);
    s2 += t1;
    s1 = eft::quick_two_sum(s1, s2, s2);
    s2 += t2;
    s1 = eft::quick_two_sum(s1, s2, s2);
    return raw(s1, s2);
  }

  friend DDReal operator+(const DDReal& a, double b) {
    double s2;
    double s1 = eft::two_sum(a.hi_, b, s2);
    s2 += a.lo_;
    s1 = eft::quick_two_sum(s1, s2, s2);
    return raw(s1, s2);
  }
  friend DDReal operator+(double a, const DDReal& b) { return b + a; }

  friend DDReal operator-(const DDReal& a, const DDReal& b) { return a + (-b); }
  friend DDReal operator-(const DDReal& a, double b) { return a + (-b); }
  friend DDReal operator-(double a, const DDReal& b) { return (-b) + a; }

  friend DDReal operator*(const DDReal& a, const DDReal& b) {
    double p2;
    double p1 = eft::two_prod(a.hi_, b.hi_, p2);
    p2 += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    p1 = eft::quick_two_sum(p1, p2, p2);
    return raw(p1, p2);
  }

  friend DDReal operator*(const DDReal& a, double b) {
    double p2;
    double p1 = eft::two_prod(a.hi_, b, p2);
    p2 += a.lo_ * b;
    p1 = eft::quick_two_sum(p1, p2, p2);
    return raw(p1, p2);
  }
  friend DDReal operator*(double a, const DDReal& b) { return b * a; }

  friend DDReal operator/(const DDReal& a, const DDReal& b) {
    const double q1 = a.hi_ / b.hi_;
    DDReal r = a - b * q1;
    const double q2 = r.hi_ / b.hi_;
    r = r - b * q2;
    const double q3 = r.hi_ / b.hi_;
    double lo;
    const double hi = eft::quick_two_sum(q1, q2, lo);
    return raw(hi, lo) + q3;
  }
  friend DDReal operator/(const DDReal& a, double b) { return a / DDReal(b); }
  friend DDReal operator/(double a, const DDReal& b) { return DDReal(a) / b; }

  DDReal& operator+=(const DDReal& o) { return *this = *this + o; }
  DDReal& operator-=(const DDReal& o) { return *this = *this - o; }
  DDReal& operator*=(const DDReal& o) { return *this = *this * o; }
  DDReal& operator/=(const DDReal& o) { return *this = *this / o; }

  friend bool operator==(const DDReal& a, const DDReal& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend bool operator<(const DDReal& a, const DDReal& b) {
    return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_);
  }
  friend bool operator>(const DDReal& a, const DDReal& b) { return b < a; }
  friend bool operator<=(const DDReal& a, const DDReal& b) { return !(b < a); }
  friend bool operator>=(const DDReal& a, const DDReal& b) { return !(a < b); }

 private:
  static DDReal raw(double hi, double lo) {
    DDReal r;
    r.hi_ = hi;
    r.lo_ = lo;
    return r;
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

/// The extended-precision scalar used by every accumulation in the toolkit.
using ExtendedReal = DDReal;

inline DDReal abs(const DDReal& a) { return a.hi() < 0.0 ? -a : a; }

inline DDReal sqr(const DDReal& a) {
  double p2;
  double p1 = eft::two_sqr(a.hi(), p2);
  p2 += 2.0 * a.hi() * a.lo();
  p2 += a.lo() * a.lo();
  p1 = eft::quick_two_sum(p1, p2, p2);
  return DDReal::from_pair(p1, p2);
}

inline DDReal ldexp(const DDReal& a, int e) {
  return DDReal::from_pair(std::ldexp(a.hi(), e), std::ldexp(a.lo(), e));
}

DDReal floor(const DDReal& a);
DDReal sqrt(const DDReal& a);
DDReal exp(const DDReal& a);
/// Natural logarithm; throws DomainError for a <= 0.
DDReal log(const DDReal& a);
/// log(1 + t) with full relative accuracy for tiny |t|; throws DomainError for t <= -1.
DDReal log1p(const DDReal& t);
/// exp(t) - 1 with full relative accuracy for tiny |t|.
DDReal expm1(const DDReal& t);
DDReal pow(const DDReal& base, int n);
/// n^(-s) for an integer base n >= 1.
DDReal inverse_power(std::uint64_t n, const DDReal& s);

/// Formats with `digits` significant decimal digits (fixed notation for
/// moderate exponents, scientific otherwise).
std::string to_string(const DDReal& a, int digits = 20);

/// Parses a decimal literal such as "-1.25e-3"; throws DomainError on garbage.
DDReal parse_ddreal(std::string_view text);

}  // namespace glab
