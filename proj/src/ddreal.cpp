#include "glab/ddreal.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <limits>
#include <string>

#include "glab/errors.hpp"

namespace glab {

namespace {

// log 2 split over three doubles; the third word keeps argument reduction
// in exp accurate for |k| in the hundreds.
constexpr double kLog2Hi = 6.931471805599452862e-01;
constexpr double kLog2Lo = 2.319046813846299558e-17;
constexpr double kLog2Lo2 = 5.707708438416212066e-34;

constexpr double kEps = 1.2e-32;  // ~2^-106

// expm1 on |r| <= 3.5e-4 by Taylor series.
DDReal expm1_small(const DDReal& r) {
  DDReal term = r;
  DDReal sum = r;
  for (int n = 2; n < 20; ++n) {
    term = term * r / static_cast<double>(n);
    sum += term;
    if (std::abs(term.hi()) <= kEps * 1e-3 * std::abs(sum.hi())) break;
  }
  return sum;
}

// Returns p = exp(a) - 1 and the binary exponent k such that
// exp(a) = 2^k (1 + p).
DDReal reduced_expm1(const DDReal& a, int& k) {
  const double kd = std::nearbyint(a.hi() / kLog2Hi);
  k = static_cast<int>(kd);
  DDReal r = a - DDReal::from_pair(kLog2Hi, kLog2Lo) * kd;
  r = r - kLog2Lo2 * kd;
  constexpr int kHalvings = 10;
  r = ldexp(r, -kHalvings);
  DDReal p = expm1_small(r);
  // (1 + p)^2 - 1 = 2p + p^2 keeps the small quantity relative-accurate.
  for (int i = 0; i < kHalvings; ++i) p = ldexp(p, 1) + sqr(p);
  return p;
}

// 2 atanh(s) with s = t / (2 + t); converges quickly for |t| < 1/4.
DDReal log1p_series(const DDReal& t) {
  const DDReal s = t / (2.0 + t);
  const DDReal s2 = sqr(s);
  DDReal power = s2;
  DDReal sum = 1.0;
  for (int i = 1; i < 60; ++i) {
    const DDReal term = power / static_cast<double>(2 * i + 1);
    sum += term;
    if (term.hi() <= kEps * 1e-3) break;
    power *= s2;
  }
  return ldexp(s * sum, 1);
}

DDReal pow10(int e) {
  DDReal result = 1.0;
  DDReal base = e >= 0 ? DDReal(10.0) : DDReal(1.0) / 10.0;
  unsigned n = static_cast<unsigned>(e >= 0 ? e : -e);
  while (n != 0) {
    if (n & 1u) result *= base;
    base = sqr(base);
    n >>= 1;
  }
  return result;
}

}  // namespace

DDReal floor(const DDReal& a) {
  const double hi = std::floor(a.hi());
  if (hi == a.hi()) return DDReal::from_pair(hi, std::floor(a.lo()));
  return DDReal(hi);
}

DDReal sqrt(const DDReal& a) {
  if (a.hi() == 0.0) return 0.0;
  if (a.hi() < 0.0) throw DomainError("sqrt of a negative extended real");
  const double x = 1.0 / std::sqrt(a.hi());
  const double ax = a.hi() * x;
  return DDReal(ax) + (a - sqr(DDReal(ax))).hi() * (x * 0.5);
}

DDReal exp(const DDReal& a) {
  if (!a.is_finite()) throw NumericContractError("exp of a non-finite value");
  if (a.hi() > 709.0) throw NumericContractError("exp overflow");
  if (a.hi() < -745.0) return 0.0;
  if (a.hi() == 0.0) return 1.0;
  int k = 0;
  const DDReal p = reduced_expm1(a, k);
  return ldexp(p + 1.0, k);
}

DDReal expm1(const DDReal& t) {
  if (std::abs(t.hi()) < 0.34) {
    int k = 0;
    const DDReal p = reduced_expm1(t, k);
    if (k == 0) return p;
  }
  return exp(t) - 1.0;
}

DDReal log(const DDReal& a) {
  if (!(a.hi() > 0.0)) throw DomainError("log of a non-positive value");
  if (!a.is_finite()) throw NumericContractError("log of a non-finite value");
  const DDReal t = a - 1.0;
  if (std::abs(t.hi()) < 0.25) return log1p_series(t);
  // One Newton step on exp(y) = a doubles the 53-bit starting guess.
  const DDReal y = std::log(a.hi());
  return y + (a * exp(-y) - 1.0);
}

DDReal log1p(const DDReal& t) {
  if (!(t.hi() > -1.0) || (t.hi() == -1.0 && t.lo() <= 0.0)) {
    throw DomainError("log1p requires t > -1");
  }
  if (std::abs(t.hi()) < 0.25) return log1p_series(t);
  return log(t + 1.0);
}

DDReal pow(const DDReal& base, int n) {
  DDReal result = 1.0;
  DDReal b = n >= 0 ? base : DDReal(1.0) / base;
  unsigned m = static_cast<unsigned>(n >= 0 ? n : -n);
  while (m != 0) {
    if (m & 1u) result *= b;
    m >>= 1;
    if (m != 0) b = sqr(b);
  }
  return result;
}

DDReal inverse_power(std::uint64_t n, const DDReal& s) {
  if (n == 0) throw DomainError("inverse_power of zero");
  if (n == 1) return 1.0;
  const double sd = s.to_double();
  if (s.lo() == 0.0 && sd == std::floor(sd) && sd >= 0.0 && sd <= 64.0) {
    return DDReal(1.0) / pow(DDReal(n), static_cast<int>(sd));
  }
  return exp(-(s * log(DDReal(n))));
}

std::string to_string(const DDReal& value, int digits) {
  if (!value.is_finite()) return std::isnan(value.hi()) ? "nan" : (value.hi() > 0 ? "inf" : "-inf");
  if (value.hi() == 0.0) return "0";
  digits = std::clamp(digits, 1, 34);
  const bool negative = value.hi() < 0.0;
  DDReal a = negative ? -value : value;

  int e = static_cast<int>(std::floor(std::log10(a.hi())));
  DDReal y = a * pow10(-e);
  if (y >= 10.0) {
    y /= 10.0;
    ++e;
  } else if (y < 1.0) {
    y *= 10.0;
    --e;
  }

  std::string mant;
  mant.reserve(static_cast<std::size_t>(digits) + 2);
  for (int i = 0; i <= digits; ++i) {
    int d = static_cast<int>(floor(y).to_double());
    d = std::clamp(d, 0, 9);
    mant.push_back(static_cast<char>('0' + d));
    y = (y - static_cast<double>(d)) * 10.0;
  }
  // Round half up on the guard digit.
  const bool round_up = mant.back() >= '5';
  mant.pop_back();
  if (round_up) {
    int i = digits - 1;
    while (i >= 0 && mant[static_cast<std::size_t>(i)] == '9') {
      mant[static_cast<std::size_t>(i)] = '0';
      --i;
    }
    if (i < 0) {
      mant.insert(mant.begin(), '1');
      mant.pop_back();
      ++e;
    } else {
      ++mant[static_cast<std::size_t>(i)];
    }
  }

  std::string out = negative ? "-" : "";
  if (e >= -5 && e < digits) {
    if (e < 0) {
      out += "0.";
      out.append(static_cast<std::size_t>(-e - 1), '0');
      out += mant;
    } else {
      out += mant.substr(0, static_cast<std::size_t>(e) + 1);
      if (e + 1 < digits) {
        out += '.';
        out += mant.substr(static_cast<std::size_t>(e) + 1);
      }
    }
  } else {
    out += mant[0];
    if (digits > 1) {
      out += '.';
      out += mant.substr(1);
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%+03d", e);
    out += buf;
  }
  return out;
}

DDReal parse_ddreal(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&]() -> DDReal {
    throw DomainError("cannot parse extended real from '" + std::string(text) + "'");
  };
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

  DDReal mantissa = 0.0;
  int scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  // Digits are folded in 9-digit chunks so each step is one pair operation.
  std::uint64_t chunk = 0;
  int chunk_len = 0;
  auto flush = [&]() {
    if (chunk_len == 0) return;
    mantissa = mantissa * pow10(chunk_len) + static_cast<double>(chunk);
    chunk = 0;
    chunk_len = 0;
  };
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      any_digit = true;
      chunk = chunk * 10 + static_cast<std::uint64_t>(c - '0');
      if (++chunk_len == 9) flush();
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  flush();
  if (!any_digit) return fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
    int exponent = 0;
    bool exp_digit = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      exp_digit = true;
      exponent = std::min(exponent * 10 + (text[i] - '0'), 100000);
    }
    if (!exp_digit) return fail();
    scale += exp_negative ? -exponent : exponent;
  }
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) return fail();
  if (scale < -340 || scale > 320) {
    if (mantissa.hi() == 0.0) return 0.0;
    throw NumericContractError("decimal exponent out of range in '" + std::string(text) + "'");
  }
  DDReal result = scale >= 0 ? mantissa * pow10(scale) : mantissa / pow10(-scale);
  return negative ? -result : result;
}

}  // namespace glab
