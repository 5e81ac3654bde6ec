#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ngramhash/charhash.hpp"
#include "ngramhash/config.hpp"
#include "ngramhash/gf2poly.hpp"

namespace ngram {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;
inline constexpr std::size_t kMaxDefaultTuples = 1000;
// Dense count arrays are capped at 2^24 cells per gram tuple.
inline constexpr int kMaxCellBits = 24;

class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Gram = std::vector<Symbol>;
using GramTuple = std::vector<Gram>;

/// A whole hash family at tiny parameters. Recursive schemes vary only the
/// h1 table; ThreeWise varies all n tables.
struct FamilySpec {
  HasherConfig cfg;
  std::size_t alphabet_size = 2;
  std::uint64_t cap = kDefaultEnumerationCap;
  /// Compose every member with g_transform (keep only the lowest set bit).
  bool lowest_bit_only = false;

  /// Total number of random bits in one member's tables.
  int entry_bits() const;
  /// Throws EnumerationCapExceeded past the cap.
  std::uint64_t family_size() const;
  int output_width() const { return cfg.output_width(); }
};

enum class PropertyKind { Uniform, TwoUniversal, PairwiseIndependent, KWise, TrailingZeroKWise };

struct Property {
  PropertyKind kind = PropertyKind::Uniform;
  int k = 1;

  static Property uniform() { return {PropertyKind::Uniform, 1}; }
  static Property two_universal() { return {PropertyKind::TwoUniversal, 2}; }
  static Property pairwise() { return {PropertyKind::PairwiseIndependent, 2}; }
  static Property kwise(int k) { return {PropertyKind::KWise, k}; }
  static Property trailing_zero(int k) { return {PropertyKind::TrailingZeroKWise, k}; }

  std::string name() const;
  friend bool operator==(const Property&, const Property&) = default;
};

/// One failing cell. For value properties `cell` holds the value tuple; for
/// trailing-zero properties it holds the j-vector; for 2-universality it is
/// empty and `count` is the collision count.
struct Witness {
  std::size_t tuple_index = 0;
  std::vector<Word> cell;
  std::uint64_t count = 0;
};

struct IndependenceReport {
  Property property;
  std::uint64_t family_size = 0;
  int output_width = 0;
  std::vector<GramTuple> tuples;
  /// Dense counts per gram tuple. Value properties index by sum v_i << (i*W);
  /// trailing-zero properties index by sum zeros_i * (W+1)^i.
  std::vector<std::vector<std::uint64_t>> counts;
  /// Trailing-zero events checked (each component in 0..W).
  std::vector<std::vector<int>> j_vectors;
  bool pass = false;
  std::uint64_t cells_checked = 0;
  std::uint64_t failing_cells = 0;
  std::vector<Witness> witnesses;  // at most kMaxWitnesses

  static constexpr std::size_t kMaxWitnesses = 10;

  /// Members with h(x_i) = values_i for every i.
  std::uint64_t count(std::size_t tuple, std::span<const Word> values) const;
  /// Members with zeros(h(x_i)) >= j_i for every i (trailing-zero reports).
  std::uint64_t event_count(std::size_t tuple, std::span<const int> j) const;
  /// Members with h(x_1) = h(x_2) (value reports with k = 2).
  std::uint64_t collisions(std::size_t tuple) const;
  bool rows_sum_to_family_size() const;
  std::string to_text() const;
};

std::string gram_to_string(std::span<const Symbol> gram);
/// 'a' -> 0, 'b' -> 1, ...
Gram gram_from_string(std::string_view s);
std::string tuple_to_string(const GramTuple& t);

/// All |alphabet|^n grams in lexicographic order.
std::vector<Gram> all_grams(int n, std::size_t alphabet);
/// All k-subsets of distinct grams, in lexicographic order of indices.
std::vector<GramTuple> distinct_tuples(std::span<const Gram> grams, int k);
/// distinct_tuples over all grams of the spec; throws std::invalid_argument
/// when there would be more than kMaxDefaultTuples.
std::vector<GramTuple> default_tuples(const FamilySpec& spec, int k);

/// Trailing zeros of an L-bit value; zeros(0) = L.
int zeros(Word v, int width);
/// Keeps only the lowest set bit; g(0) = 0.
constexpr Word g_transform(Word v) { return v & (~v + 1); }

/// Exact counts over every family member. Every tuple must have property.k
/// distinct grams of length n. For trailing-zero properties `j_vectors`
/// defaults to all of {0..W}^k. The result does not depend on `workers`.
IndependenceReport enumerate_counts(const FamilySpec& spec, const std::vector<GramTuple>& tuples, Property property,
                                    unsigned workers = 1, std::vector<std::vector<int>> j_vectors = {});

IndependenceReport check_trailing_zero(const FamilySpec& spec, const std::vector<GramTuple>& tuples,
                                       std::vector<std::vector<int>> j_vectors = {}, unsigned workers = 1);

struct KarpRabinVerdict {
  Word base = 0;
  int n = 0;
  bool predicted_uniform = false;
  IndependenceReport uniform;
  std::optional<IndependenceReport> pairwise;  // absent for a one-symbol alphabet

  /// Uniform iff B even or n odd; pairwise only for n = 1.
  bool matches() const;
};

std::vector<KarpRabinVerdict> check_karp_rabin_matrix(int width, std::span<const int> n_values,
                                                      std::span<const Word> base_values, std::size_t alphabet = 2,
                                                      unsigned workers = 1);

struct ThreeWiseVerdict {
  IndependenceReport three_wise;
  /// On the quadruple {aa.., ab.., ba.., bb..}; absent when n = 1 or |alphabet| = 1.
  std::optional<IndependenceReport> four_wise;
  /// Members for which the quadruple's hashes XOR to zero.
  std::uint64_t xor_zero_members = 0;

  bool matches() const;
};

ThreeWiseVerdict check_threewise(int width, int n, std::size_t alphabet, unsigned workers = 1);

/// Windows a^n, a^(n-1)b, a^(n-2)bb of the stream a^n b b.
GramTuple collapse_windows(int n);

/// Streams a^n b b through every member of a recursive family.
struct CollapseCheck {
  std::uint64_t family_size = 0;
  /// Members with h(a^n) = h(a^(n-1)b) = 0.
  std::uint64_t antecedent = 0;
  /// Of those, members whose next window also hashes to 0.
  std::uint64_t consequent = 0;
  IndependenceReport three_wise;  // trailing-zero, all j-vectors
  IndependenceReport two_wise;    // trailing-zero on the first two windows

  bool collapse_holds() const { return antecedent == consequent; }
};

CollapseCheck check_recursive_collapse(const FamilySpec& spec, unsigned workers = 1);

struct ImplicationCheck {
  IndependenceReport pairwise;
  IndependenceReport uniform;
  IndependenceReport two_universal;

  /// Pairwise pass implies uniform pass and 2-universal pass.
  bool consistent() const;
};

ImplicationCheck check_implications(const FamilySpec& spec, const std::vector<GramTuple>& pairs, unsigned workers = 1);

}  // namespace ngram
