#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ngramhash/gf2poly.hpp"

namespace ngram {

enum class Scheme {
  ThreeWise,           // h1(s1) ^ h2(s2) ^ ... ^ hn(sn), not recursive
  KarpRabin,           // sum h1(s_i) B^(n-i) mod 2^L
  General,             // sum h1(s_i) x^(n-i) mod p(x), p irreducible
  RamBufferedGeneral,  // General with table-driven multiplication by x^n
  Cyclic,              // General with p(x) = x^L + 1
  TruncatedCyclic,     // Cyclic with n-1 consecutive bits dropped
};

std::string_view scheme_name(Scheme s);
/// Accepts the canonical names plus a few aliases ("id37", "truncated-cyclic", ...).
Scheme parse_scheme(std::string_view name);
/// True for the families that update the previous hash value in O(1) words.
bool is_recursive(Scheme s);

inline constexpr std::size_t kDefaultShiftTableBudget = std::size_t{512} << 20;

struct HasherConfig {
  Scheme scheme = Scheme::Cyclic;
  int n = 1;
  /// Word width L of the ring. For TruncatedCyclic this is the internal
  /// width; the emitted values have output_width() = L - n + 1 bits.
  int width = 19;
  /// Karp-Rabin multiplier.
  Word base = 37;
  /// General variants: reduction polynomial of degree L. Zero selects
  /// default_irreducible(width).
  GF2Poly poly{};
  /// RamBufferedGeneral: number of lookup tables K; must divide n.
  int k_split = 1;
  /// TruncatedCyclic: first dropped bit position. Default is L - n + 1, i.e.
  /// the top n - 1 bits are dropped.
  std::optional<int> drop_offset;
  std::uint64_t seed = 0;
  std::size_t shift_table_budget = kDefaultShiftTableBudget;

  int output_width() const;
  int effective_drop_offset() const;
  /// Ring modulus for the polynomial schemes. Throws std::logic_error otherwise.
  Modulus modulus() const;
  /// Number of character tables the scheme needs: n for ThreeWise, else 1.
  std::size_t table_count() const;

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  /// key=value lines; from_text ignores blank lines and '#' comments and
  /// validates the result.
  std::string to_text() const;
  static HasherConfig from_text(std::string_view text);

  friend bool operator==(const HasherConfig&, const HasherConfig&) = default;
};

}  // namespace ngram
