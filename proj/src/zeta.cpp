#include "glab/zeta.hpp"

#include <array>
#include <cmath>

#include "glab/accumulator.hpp"
#include "glab/errors.hpp"
#include "glab/primes.hpp"

namespace glab {

namespace {

struct Bernoulli {
  double num;
  double den;
};

// B_2, B_4, ..., B_30 as exact rationals (numerators fit a double exactly).
constexpr std::array<Bernoulli, 15> kBernoulli = {{
    {1.0, 6.0},
    {-1.0, 30.0},
    {1.0, 42.0},
    {-1.0, 30.0},
    {5.0, 66.0},
    {-691.0, 2730.0},
    {7.0, 6.0},
    {-3617.0, 510.0},
    {43867.0, 798.0},
    {-174611.0, 330.0},
    {854513.0, 138.0},
    {-236364091.0, 2730.0},
    {8553103.0, 6.0},
    {-23749461029.0, 870.0},
    {8615841276005.0, 14322.0},
}};

// B_{2j} / (2j)!
const std::array<DDReal, 15>& em_coefficients() {
  static const std::array<DDReal, 15> c = [] {
    std::array<DDReal, 15> out{};
    DDReal factorial = 1.0;
    for (std::size_t j = 0; j < out.size(); ++j) {
      const double n = 2.0 * static_cast<double>(j + 1);
      factorial = factorial * (n - 1.0) * n;
      out[j] = DDReal(kBernoulli[j].num) / kBernoulli[j].den / factorial;
    }
    return out;
  }();
  return c;
}

// log zeta_x(s) = log zeta(s) + sum_{p <= x} log(1 - p^-s).
DDReal log_partial_zeta(const DDReal& s, std::span<const std::uint64_t> head) {
  Accumulator acc;
  acc.add(log1p(zeta_minus_one(s)));
  for (const std::uint64_t p : head) acc.add(log1p(-inverse_power(p, s)));
  return acc.value();
}

}  // namespace

DDReal zeta_minus_one(const DDReal& s) {
  if (!(s.hi() > 1.0)) throw DomainError("zeta requires s > 1");
  constexpr std::uint64_t kN = 20;
  Accumulator acc;
  for (std::uint64_t n = 2; n < kN; ++n) acc.add(inverse_power(n, s));
  const DDReal n_s = inverse_power(kN, s);  // N^-s
  const double n = static_cast<double>(kN);
  acc.add(n_s * n / (s - 1.0));
  acc.add(n_s * 0.5);
  // Tail corrections B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}.
  DDReal rising = s;
  DDReal n_pow = n_s / n;
  const auto& c = em_coefficients();
  for (std::size_t j = 0; j < c.size(); ++j) {
    const DDReal term = c[j] * rising * n_pow;
    acc.add(term);
    if (std::abs(term.hi()) < 1e-40) break;
    const double k = 2.0 * static_cast<double>(j + 1);
    rising = rising * (s + (k - 1.0)) * (s + k);
    n_pow = n_pow / (n * n);
  }
  return acc.value();
}

int moebius(std::uint64_t n) {
  if (n == 0) throw DomainError("moebius(0) undefined");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

DDReal prime_zeta_tail_sum(double x, const DDReal& lambda) {
  if (!(lambda.hi() > 1.0)) throw DomainError("prime zeta tail requires lambda > 1");
  if (!(x >= 1.0)) throw DomainError("prime zeta tail requires x >= 1");
  if (x >= static_cast<double>(kPrimeCeiling)) throw DomainError("x exceeds 2^63");
  const auto floor_x = static_cast<std::uint64_t>(std::floor(x));
  const std::vector<std::uint64_t> head =
      floor_x >= 2 ? primes_between(0, floor_x + 1) : std::vector<std::uint64_t>{};
  // Terms vanish below the smallest excluded prime; bound with that, not x.
  const double base = std::max(x, 2.0);
  Accumulator acc;
  for (std::uint64_t n = 1;; ++n) {
    const DDReal s = lambda * static_cast<double>(n);
    const double sd = s.to_double();
    const double lb = std::log(base);
    const double bound = 2.0 * (std::exp(-sd * lb) + std::exp((1.0 - sd) * lb) / (sd - 1.0));
    if (n > 1 && bound / static_cast<double>(n) < 1e-36) break;
    const int mu = moebius(n);
    if (mu == 0) continue;
    const DDReal term = log_partial_zeta(s, head) / static_cast<double>(n);
    acc.add(mu > 0 ? term : -term);
  }
  return acc.value();
}

PrimeZetaTails::PrimeZetaTails(std::span<const std::uint64_t> primes, double lambda)
    : lambda_(lambda), total_(prime_zeta_tail_sum(1.0, lambda)) {
  prefix_.reserve(primes.size() + 1);
  prefix_.push_back(0.0);
  Accumulator acc;
  for (const std::uint64_t p : primes) {
    acc.add(inverse_power(p, lambda));
    prefix_.push_back(acc.value());
  }
}

}  // namespace glab
