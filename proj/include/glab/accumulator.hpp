#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "glab/ddreal.hpp"

namespace glab {

/// Exact summation of doubles (and of the two words of pair values) into a
/// fixed-point superaccumulator spanning the whole binary64 range.
///
/// Because the state is the exact sum, the rounded result does not depend on
/// term order, on how the stream is split, or on how partial accumulators
/// are merged. value() rounds the exact state to a pair with relative error
/// below 2^-104.
class Accumulator {
 public:
  /// Throws NumericContractError for non-finite terms.
  void add(double term);
  void add(const DDReal& term);
  Accumulator& operator+=(double term) {
    add(term);
    return *this;
  }
  Accumulator& operator+=(const DDReal& term) {
    add(term);
    return *this;
  }
  /// Exact merge of another partial sum.
  Accumulator& operator+=(const Accumulator& other);

  DDReal value() const;
  /// Number of terms added (a pair value counts once).
  std::uint64_t count() const { return count_; }

 private:
  static constexpr int kChunkBits = 32;
  static constexpr int kChunks = 68;
  static constexpr int kBias = 1126;  // bit 0 has weight 2^-1126
  static constexpr std::uint32_t kNormalizeEvery = 1u << 30;

  void add_word(double term);
  void normalize();

  std::array<std::int64_t, kChunks> chunks_{};
  std::uint64_t count_ = 0;
  std::uint32_t pending_ = 0;
};

/// Sum of a sequence of pair values.
DDReal accumulate(std::span<const DDReal> terms);
/// Sum of a sequence of doubles.
DDReal accumulate(std::span<const double> terms);

}  // namespace glab
