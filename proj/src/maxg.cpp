#include <algorithm>
#include <cmath>

#include "glab/accumulator.hpp"
#include "glab/constants.hpp"
#include "glab/errors.hpp"
#include "glab/gronwall.hpp"
#include "glab/primes.hpp"

namespace glab::gronwall {

namespace {

// log(sigma(p^e) / p^e) = log(1 - p^-(e+1)) - log(1 - 1/p)
DDReal local_term(std::uint64_t p, std::uint32_t e) {
  const DDReal top = log1p(-inverse_power(p, DDReal(static_cast<double>(e + 1))));
  return top - log1p(-(DDReal(1.0) / DDReal(p)));
}

// max e with p^e <= x
std::uint32_t floor_log(std::uint64_t p, std::uint64_t x) {
  std::uint32_t e = 0;
  unsigned __int128 pw = p;
  while (pw <= x) {
    ++e;
    pw *= p;
  }
  return e;
}

DDReal combine(const DDReal& sum_terms, const DDReal& eta) { return sum_terms - log(log(eta)); }

}  // namespace

DDReal log_G_of(std::span<const std::uint32_t> exponents, std::span<const std::uint64_t> primes) {
  if (exponents.size() > primes.size()) throw DomainError("more exponents than primes");
  Accumulator terms, eta;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    terms.add(local_term(primes[i], exponents[i]));
    eta.add(log(DDReal(primes[i])) * static_cast<double>(exponents[i]));
  }
  const DDReal e = eta.value();
  if (!(e.hi() > 1.0)) throw DomainError("log G needs N > e");
  return combine(terms.value(), e);
}

MaxGResult max_g(std::uint64_t k, std::uint64_t budget) {
  if (k < 2) throw DomainError("max_g needs k >= 2");
  if (budget == 0) throw DomainError("max_g needs a positive budget");
  if (k > extremal::kMaxK) throw ResourceError("max_g is limited to k <= 5000000");

  MaxGResult res;
  res.k = k;
  res.budget = budget;
  const DDReal two_sqrt2 = constants().two_sqrt2;
  res.window_lo = (two_sqrt2 - 2.75).to_double();
  res.window_hi = (two_sqrt2 - 1.25).to_double();

  std::vector<std::uint32_t> a;
  std::vector<std::uint64_t> primes;
  if (k >= extremal::k_min()) {
    const extremal::LemmaContext ctx(k);
    a = extremal::construct(k, ctx).N_star.expand();
    primes.assign(ctx.table().primes().begin(), ctx.table().primes().end());
  } else {
    primes = primes_between(0, nth_prime(k) + 1);
    a.resize(k);
  }
  const std::uint64_t p_k = primes[k - 1];
  res.p_k = p_k;

  std::vector<std::uint32_t> cap(k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::uint32_t e = floor_log(primes[j], 2 * p_k);
    if (a[j] == 0) a[j] = std::max<std::uint32_t>(1, e);
    cap[j] = std::max(e + 2, a[j]);
  }

  std::vector<DDReal> log_p(k);
  Accumulator terms0, eta0;
  for (std::size_t j = 0; j < k; ++j) {
    log_p[j] = log(DDReal(primes[j]));
    terms0.add(local_term(primes[j], a[j]));
    eta0.add(log_p[j] * static_cast<double>(a[j]));
  }
  DDReal sum_terms = terms0.value();
  DDReal eta = eta0.value();
  DDReal best = combine(sum_terms, eta);
  res.seed_log_G = best;

  constexpr double kMinGain = 1e-30;
  bool out_of_budget = false;
  // Tries a_j -> a_j + delta; applies it when log G improves.
  auto attempt = [&](std::size_t j, int delta) {
    if (res.evaluations >= budget) {
      out_of_budget = true;
      return false;
    }
    ++res.evaluations;
    const auto next = static_cast<std::uint32_t>(static_cast<int>(a[j]) + delta);
    const DDReal t = sum_terms - local_term(primes[j], a[j]) + local_term(primes[j], next);
    const DDReal e = delta > 0 ? eta + log_p[j] : eta - log_p[j];
    if (!(e.hi() > 1.0)) return false;
    const DDReal g = combine(t, e);
    if (!((g - best).to_double() > kMinGain)) return false;
    a[j] = next;
    sum_terms = t;
    eta = e;
    best = g;
    return true;
  };
  auto can_raise = [&](std::size_t j) { return a[j] < cap[j] && (j == 0 || a[j - 1] > a[j]); };
  auto can_lower = [&](std::size_t j) { return a[j] > 1 && (j + 1 == k || a[j + 1] < a[j]); };

  bool improved = true;
  while (improved && !out_of_budget) {
    improved = false;
    for (std::size_t j = 0; j < k && !out_of_budget; ++j) {
      if (can_raise(j) && attempt(j, +1)) improved = true;
      if (!out_of_budget && can_lower(j) && attempt(j, -1)) improved = true;
    }
    for (std::size_t j = k; j-- > 0 && !out_of_budget;) {
      if (can_lower(j) && attempt(j, -1)) improved = true;
      if (!out_of_budget && can_raise(j) && attempt(j, +1)) improved = true;
    }
  }
  res.converged = !improved && !out_of_budget;

  res.best = extremal::FactoredInteger(extremal::FactoredInteger::encode(a), eta);
  res.log_G = best;
  res.a_k = (constants().gamma - best) * sqrt(DDReal(p_k)) * log_p[k - 1];
  const double ak = res.a_k.to_double();
  res.in_window = res.window_lo < ak && ak < res.window_hi;
  return res;
}

}  // namespace glab::gronwall
