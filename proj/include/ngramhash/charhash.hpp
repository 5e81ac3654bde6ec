#pragma once

// Per-symbol random hash tables: the inner hash h1 of every n-gram family.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "ngramhash/gf2poly.hpp"

namespace ngram {

/// Symbols are dense integers in [0, alphabet_size). Byte streams use 256.
using Symbol = std::uint32_t;

inline constexpr std::size_t kByteAlphabet = 256;

class CharHashTable {
 public:
  /// Table filled from std::mt19937_64 seeded with `seed`; each entry is the
  /// top `width` bits of one draw. Throws std::invalid_argument for width
  /// outside [1, kMaxWidth] or an empty alphabet.
  static CharHashTable random(int width, std::size_t alphabet_size, std::uint64_t seed);

  /// Table with exactly these entries. Throws std::invalid_argument if any
  /// value is >= 2^width.
  static CharHashTable from_values(std::vector<Word> values, int width);

  /// Checked read; throws std::out_of_range for c >= alphabet_size().
  Word lookup(Symbol c) const;
  /// Unchecked read.
  Word operator[](Symbol c) const noexcept { return values_[c]; }

  std::span<const Word> values() const noexcept { return values_; }
  int width() const noexcept { return width_; }
  std::size_t alphabet_size() const noexcept { return values_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Text form: header line "L alphabet_size seed", then one hex word per symbol.
  void save(std::ostream& out) const;
  static CharHashTable load(std::istream& in);

  friend bool operator==(const CharHashTable&, const CharHashTable&) = default;

 private:
  CharHashTable(std::vector<Word> values, int width, std::uint64_t seed)
      : values_(std::move(values)), width_(width), seed_(seed) {}

  std::vector<Word> values_;
  int width_ = 0;
  std::uint64_t seed_ = 0;
};

/// `count` independent tables; table i is seeded with seed + i.
std::vector<CharHashTable> random_tables(int width, std::size_t alphabet_size, std::uint64_t seed,
                                         std::size_t count);

}  // namespace ngram
