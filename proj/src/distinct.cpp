#include "ngramhash/distinct.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_set>

#include "ngramhash/indeptest.hpp"

namespace ngram {

DistinctEstimate estimate_distinct(NgramHasher& hasher, std::span<const unsigned char> input, bool exact) {
  DistinctEstimate e;
  e.output_width = hasher.config().output_width();
  hasher.reset();
  const int width = e.output_width;
  int k = 0;
  std::uint64_t grams = 0;
  hasher.eat_all(input, [&](Word v) {
    k = std::max(k, zeros(v, width));
    ++grams;
  });
  e.grams = grams;
  e.max_zeros = k;
  if (exact) e.exact = count_distinct_grams(input, hasher.config().n);
  return e;
}

std::uint64_t count_distinct_grams(std::span<const unsigned char> input, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const auto len = static_cast<std::size_t>(n);
  if (input.size() < len) return 0;
  const std::string_view text(reinterpret_cast<const char*>(input.data()), input.size());
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i + len <= text.size(); ++i) seen.insert(text.substr(i, len));
  return seen.size();
}

}  // namespace ngram
