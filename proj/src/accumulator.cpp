#include "glab/accumulator.hpp"

#include <cmath>

#include "glab/errors.hpp"

namespace glab {

void Accumulator::add(double term) {
  add_word(term);
  ++count_;
}

void Accumulator::add(const DDReal& term) {
  add_word(term.hi());
  add_word(term.lo());
  ++count_;
}

void Accumulator::add_word(double term) {
  if (!std::isfinite(term)) throw NumericContractError("non-finite term in accumulation");
  if (term == 0.0) return;
  if (++pending_ >= kNormalizeEvery) normalize();

  int e = 0;
  const double f = std::frexp(term, &e);  // term = f * 2^e, 0.5 <= |f| < 1
  const auto m = static_cast<std::int64_t>(std::ldexp(f, 53));
  const int bit = e - 53 + kBias;
  const int idx = bit / kChunkBits;
  const int shift = bit % kChunkBits;
  const unsigned __int128 mag =
      static_cast<unsigned __int128>(m < 0 ? -m : m) << shift;
  const auto c0 = static_cast<std::int64_t>(mag & 0xffffffffu);
  const auto c1 = static_cast<std::int64_t>((mag >> 32) & 0xffffffffu);
  const auto c2 = static_cast<std::int64_t>(mag >> 64);
  if (m < 0) {
    chunks_[idx] -= c0;
    chunks_[idx + 1] -= c1;
    chunks_[idx + 2] -= c2;
  } else {
    chunks_[idx] += c0;
    chunks_[idx + 1] += c1;
    chunks_[idx + 2] += c2;
  }
}

void Accumulator::normalize() {
  for (int i = 0; i + 1 < kChunks; ++i) {
    const std::int64_t carry = chunks_[i] >> kChunkBits;  // floor division
    chunks_[i] -= carry * (std::int64_t{1} << kChunkBits);
    chunks_[i + 1] += carry;
  }
  pending_ = 0;
}

Accumulator& Accumulator::operator+=(const Accumulator& other) {
  normalize();
  Accumulator rhs = other;
  rhs.normalize();
  for (int i = 0; i < kChunks; ++i) chunks_[i] += rhs.chunks_[i];
  count_ += other.count_;
  pending_ = 1;
  normalize();
  return *this;
}

DDReal Accumulator::value() const {
  Accumulator a = *this;
  a.normalize();
  bool negative = false;
  for (int i = kChunks - 1; i >= 0; --i) {
    if (a.chunks_[i] != 0) {
      negative = a.chunks_[i] < 0;
      break;
    }
  }
  if (negative) {
    for (auto& c : a.chunks_) c = -c;
    a.normalize();
  }
  int top = kChunks - 1;
  while (top >= 0 && a.chunks_[top] == 0) --top;
  if (top < 0) return 0.0;
  DDReal sum = 0.0;
  // Six 32-bit chunks cover more than the 106 bits a pair can hold.
  for (int i = top; i >= 0 && i > top - 6; --i) {
    sum += std::ldexp(static_cast<double>(a.chunks_[i]), i * kChunkBits - kBias);
  }
  if (!sum.is_finite()) throw NumericContractError("accumulated sum overflows");
  return negative ? -sum : sum;
}

DDReal accumulate(std::span<const DDReal> terms) {
  Accumulator acc;
  for (const auto& t : terms) acc.add(t);
  return acc.value();
}

DDReal accumulate(std::span<const double> terms) {
  Accumulator acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

}  // namespace glab
