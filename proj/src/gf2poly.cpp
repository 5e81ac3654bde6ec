#include "ngramhash/gf2poly.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <vector>

namespace ngram {

namespace {

void require_reduced(GF2Poly a, int width, const char* what) {
  if (degree(a) >= width) {
    throw std::invalid_argument(std::string(what) + ": operand " + to_hex(a) +
                                " has degree >= " + std::to_string(width));
  }
}

void require_width(int width) {
  if (width < 1 || width > kMaxWidth) {
    throw std::invalid_argument("ring width must be in [1, " + std::to_string(kMaxWidth) +
                                "], got " + std::to_string(width));
  }
}

Word mul_mod_raw(Word a, Word b, Word poly, int width) {
  Word r = 0;
  while (b != 0) {
    if (b & 1U) r ^= a;
    b >>= 1;
    a = detail::shift_mod_raw(a, poly, width);
  }
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

int Degree::value() const {
  if (is_neg_inf()) throw std::domain_error("degree of the zero polynomial is -infinity");
  return value_;
}

Modulus Modulus::irreducible(GF2Poly p) {
  if (p.is_zero()) throw std::invalid_argument("modulus must be nonzero");
  const int width = degree(p).value();
  require_width(width);
  if (!is_irreducible(p)) {
    throw std::invalid_argument("modulus " + to_monomial_string(p) + " is not irreducible");
  }
  return Modulus{p, width, Kind::Irreducible};
}

Modulus Modulus::cyclic(int width) {
  require_width(width);
  return Modulus{GF2Poly{(Word{1} << width) | 1U}, width, Kind::Cyclic};
}

GF2Poly shift_mod(GF2Poly a, const Modulus& p) {
  require_reduced(a, p.width(), "shift_mod");
  return GF2Poly{detail::shift_mod_raw(a.bits, p.poly().bits, p.width())};
}

GF2Poly mul_mod(GF2Poly a, GF2Poly b, const Modulus& p) {
  require_reduced(a, p.width(), "mul_mod");
  require_reduced(b, p.width(), "mul_mod");
  return GF2Poly{mul_mod_raw(a.bits, b.bits, p.poly().bits, p.width())};
}

GF2Poly monomial_mod(unsigned exponent, const Modulus& p) {
  Word r = 1;
  for (unsigned i = 0; i < exponent; ++i) r = detail::shift_mod_raw(r, p.poly().bits, p.width());
  return GF2Poly{r};
}

GF2Poly rotate_left(GF2Poly a, unsigned k, int width) {
  require_width(width);
  require_reduced(a, width, "rotate_left");
  return GF2Poly{detail::rotl_raw(a.bits, k % static_cast<unsigned>(width), width)};
}

GF2Poly poly_mod(GF2Poly a, GF2Poly divisor) {
  if (divisor.is_zero()) throw std::invalid_argument("poly_mod: division by zero polynomial");
  const int dd = degree(divisor).value();
  while (degree(a) >= dd) {
    a.bits ^= divisor.bits << (degree(a).value() - dd);
  }
  return a;
}

GF2Poly poly_gcd(GF2Poly a, GF2Poly b) {
  while (!b.is_zero()) {
    GF2Poly r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

bool is_irreducible(GF2Poly p) {
  const Degree deg = degree(p);
  if (deg < 1) throw std::invalid_argument("is_irreducible: degree must be >= 1");
  const int d = deg.value();
  if (d == 1) return true;
  // p is irreducible iff gcd(x^(2^i) - x, p) = 1 for every i <= d/2.
  const Word x = 0b10;
  Word u = x;
  for (int i = 1; i <= d / 2; ++i) {
    u = mul_mod_raw(u, u, p.bits, d);
    if (poly_gcd(p, GF2Poly{u ^ x}) != GF2Poly::one()) return false;
  }
  return true;
}

GF2Poly find_irreducible(int deg) {
  require_width(deg);
  const Word top = Word{1} << deg;
  for (Word low = 0; low < top; ++low) {
    GF2Poly candidate{top | low};
    if (is_irreducible(candidate)) return candidate;
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

GF2Poly default_irreducible(int width) {
  switch (width) {
    case 10: return parse_poly("x^10+x^3+1");
    case 15: return parse_poly("x^15+x+1");
    case 19: return parse_poly("x^19+x^5+x^2+x+1");
    case 20: return parse_poly("x^20+x^3+1");
    case 25: return parse_poly("x^25+x^3+1");
    case 30: return parse_poly("x^30+x^6+x^4+x+1");
    default: return find_irreducible(width);
  }
}

std::string to_hex(GF2Poly p) {
  char buf[24];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p.bits, 16);
  return "0x" + std::string(buf, end);
}

std::string to_monomial_string(GF2Poly p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = degree(p).value(); i >= 0; --i) {
    if (!p.coefficient(i)) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += '1';
    } else if (i == 1) {
      out += 'x';
    } else {
      out += "x^" + std::to_string(i);
    }
  }
  return out;
}

GF2Poly parse_poly(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty polynomial");
  auto fail = [&] { return std::invalid_argument("cannot parse polynomial '" + std::string(text) + "'"); };

  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    Word v = 0;
    auto digits = text.substr(2);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, 16);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) throw fail();
    return GF2Poly{v};
  }
  if (text == "0") return GF2Poly{};

  Word bits = 0;
  while (!text.empty()) {
    const auto plus = text.find('+');
    std::string_view term = trim(text.substr(0, plus));
    text = plus == std::string_view::npos ? std::string_view{} : text.substr(plus + 1);
    int exponent = 0;
    if (term == "1") {
      exponent = 0;
    } else if (term == "x") {
      exponent = 1;
    } else if (term.size() > 2 && term.substr(0, 2) == "x^") {
      auto e = term.substr(2);
      auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exponent);
      if (ec != std::errc{} || ptr != e.data() + e.size() || exponent < 0 || exponent > 63) throw fail();
    } else {
      throw fail();
    }
    bits ^= Word{1} << exponent;
  }
  return GF2Poly{bits};
}

}  // namespace ngram
