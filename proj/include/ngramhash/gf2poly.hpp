#pragma once

// Polynomials over GF(2) packed into a machine word, plus arithmetic in the
// quotient rings GF(2)[x]/p(x).
//
// Bit i holds the coefficient of x^i, so a left shift multiplies by x.

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ngram {

using Word = std::uint64_t;

/// Largest supported ring width L. A value of degree < L plus the overflow
/// bit produced by one shift must fit in a Word.
inline constexpr int kMaxWidth = 63;

constexpr Word low_mask(int width) noexcept {
  return width >= 64 ? ~Word{0} : (Word{1} << width) - 1;
}

struct GF2Poly {
  Word bits = 0;

  constexpr GF2Poly() = default;
  constexpr explicit GF2Poly(Word b) : bits(b) {}

  static constexpr GF2Poly monomial(int exponent) { return GF2Poly{Word{1} << exponent}; }
  static constexpr GF2Poly one() { return GF2Poly{1}; }

  constexpr bool is_zero() const noexcept { return bits == 0; }
  constexpr bool coefficient(int i) const noexcept { return (bits >> i) & 1U; }

  // Addition and subtraction coincide in characteristic 2.
  friend constexpr GF2Poly operator+(GF2Poly a, GF2Poly b) { return GF2Poly{a.bits ^ b.bits}; }
  friend constexpr GF2Poly operator-(GF2Poly a, GF2Poly b) { return GF2Poly{a.bits ^ b.bits}; }
  friend constexpr GF2Poly operator^(GF2Poly a, GF2Poly b) { return GF2Poly{a.bits ^ b.bits}; }
  constexpr GF2Poly& operator^=(GF2Poly o) {
    bits ^= o.bits;
    return *this;
  }
  constexpr GF2Poly& operator+=(GF2Poly o) { return *this ^= o; }

  friend constexpr bool operator==(GF2Poly, GF2Poly) = default;
};

/// Degree of a polynomial; the zero polynomial has degree -infinity.
/// Comparisons order NegInf below every finite degree. There is deliberately
/// no implicit conversion to int.
class Degree {
 public:
  static constexpr Degree neg_inf() { return Degree{}; }
  static constexpr Degree finite(int d) { return Degree{d}; }

  constexpr bool is_neg_inf() const noexcept { return value_ < 0; }
  /// Throws std::domain_error for NegInf.
  int value() const;

  friend constexpr bool operator==(Degree, Degree) = default;
  friend constexpr std::strong_ordering operator<=>(Degree a, Degree b) { return a.value_ <=> b.value_; }
  friend constexpr bool operator==(Degree a, int d) { return !a.is_neg_inf() && a.value_ == d; }
  friend constexpr std::strong_ordering operator<=>(Degree a, int d) {
    if (a.is_neg_inf()) return std::strong_ordering::less;
    return a.value_ <=> d;
  }

 private:
  constexpr Degree() = default;
  constexpr explicit Degree(int d) : value_(d) {}
  int value_ = -1;
};

constexpr Degree degree(GF2Poly a) noexcept {
  return a.is_zero() ? Degree::neg_inf() : Degree::finite(std::bit_width(a.bits) - 1);
}

/// The reduction polynomial of a quotient ring GF(2)[x]/p(x), deg p = L.
class Modulus {
 public:
  enum class Kind { Irreducible, Cyclic };

  /// Validates degree in [1, kMaxWidth] and irreducibility.
  static Modulus irreducible(GF2Poly p);
  /// x^L + 1.
  static Modulus cyclic(int width);

  constexpr GF2Poly poly() const noexcept { return poly_; }
  constexpr int width() const noexcept { return width_; }
  constexpr Kind kind() const noexcept { return kind_; }

  friend constexpr bool operator==(const Modulus&, const Modulus&) = default;

 private:
  constexpr Modulus(GF2Poly p, int w, Kind k) : poly_(p), width_(w), kind_(k) {}
  GF2Poly poly_;
  int width_;
  Kind kind_;
};

namespace detail {

// Unchecked kernels for the hot paths; operands must already be reduced.
constexpr Word shift_mod_raw(Word a, Word poly, int width) noexcept {
  a <<= 1;
  if ((a >> width) & 1U) a ^= poly;
  return a;
}

constexpr Word rotl_raw(Word a, unsigned k, int width) noexcept {
  // k < width
  if (k == 0) return a;
  return ((a << k) | (a >> (static_cast<unsigned>(width) - k))) & low_mask(width);
}

constexpr Word rotr_raw(Word a, unsigned k, int width) noexcept {
  if (k == 0) return a;
  return ((a >> k) | (a << (static_cast<unsigned>(width) - k))) & low_mask(width);
}

}  // namespace detail

/// x * a mod p. Throws std::invalid_argument if degree(a) >= L.
GF2Poly shift_mod(GF2Poly a, const Modulus& p);

/// a * b mod p. Throws std::invalid_argument if either operand has degree >= L.
GF2Poly mul_mod(GF2Poly a, GF2Poly b, const Modulus& p);

/// x^e mod p.
GF2Poly monomial_mod(unsigned exponent, const Modulus& p);

/// x^k * a mod x^L + 1, i.e. a rotation of the low L bits toward higher
/// positions. Throws std::invalid_argument if degree(a) >= L or L is out of range.
GF2Poly rotate_left(GF2Poly a, unsigned k, int width);

/// Remainder of plain polynomial division in GF(2)[x]. Throws on zero divisor.
GF2Poly poly_mod(GF2Poly a, GF2Poly divisor);
GF2Poly poly_gcd(GF2Poly a, GF2Poly b);

/// Exact irreducibility verdict. Throws std::invalid_argument for degree < 1.
bool is_irreducible(GF2Poly p);

/// Smallest (by integer encoding) irreducible polynomial of the given degree.
GF2Poly find_irreducible(int degree);

/// The irreducible polynomial used by default for width L: the well-known
/// sparse ones for L in {10, 15, 19, 20, 25, 30}, otherwise find_irreducible(L).
GF2Poly default_irreducible(int width);

/// "0x" followed by lowercase hex of the bit encoding.
std::string to_hex(GF2Poly p);
/// Monomial form with the highest power first, e.g. "x^19+x^5+x^2+x+1"; "0" for zero.
std::string to_monomial_string(GF2Poly p);
/// Accepts hex ("0x80027"), or the monomial form in any term order.
GF2Poly parse_poly(std::string_view text);

}  // namespace ngram
