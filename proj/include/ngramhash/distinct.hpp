#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "ngramhash/rolling.hpp"

namespace ngram {

/// Distinct n-gram estimate from the largest trailing-zero count seen.
struct DistinctEstimate {
  std::uint64_t grams = 0;
  int output_width = 0;
  int max_zeros = 0;  // k
  std::optional<std::uint64_t> exact;

  /// 2^k, or 0 when the input holds no complete n-gram.
  std::uint64_t estimate() const { return grams == 0 ? 0 : std::uint64_t{1} << max_zeros; }
};

/// Hashes every n-gram of `input`; with `exact` also counts distinct grams
/// with a hash set (memory grows with the number of distinct grams).
DistinctEstimate estimate_distinct(NgramHasher& hasher, std::span<const unsigned char> input, bool exact = false);

std::uint64_t count_distinct_grams(std::span<const unsigned char> input, int n);

}  // namespace ngram
