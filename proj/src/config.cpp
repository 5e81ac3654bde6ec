#include "ngramhash/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ngram {

namespace {

constexpr std::array<std::pair<std::string_view, Scheme>, 6> kCanonical{{
    {"threewise", Scheme::ThreeWise},
    {"karprabin", Scheme::KarpRabin},
    {"general", Scheme::General},
    {"rambuffered", Scheme::RamBufferedGeneral},
    {"cyclic", Scheme::Cyclic},
    {"truncated", Scheme::TruncatedCyclic},
}};

constexpr std::array<std::pair<std::string_view, Scheme>, 7> kAliases{{
    {"3wise", Scheme::ThreeWise},
    {"id37", Scheme::KarpRabin},
    {"karp-rabin", Scheme::KarpRabin},
    {"ram-buffered-general", Scheme::RamBufferedGeneral},
    {"rambufferedgeneral", Scheme::RamBufferedGeneral},
    {"truncated-cyclic", Scheme::TruncatedCyclic},
    {"truncatedcyclic", Scheme::TruncatedCyclic},
}};

[[noreturn]] void invalid(const std::string& msg) { throw std::invalid_argument(msg); }

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  int base = 10;
  if (v.size() > 2 && v[0] == '0' && (v[1] == 'x' || v[1] == 'X')) {
    v.remove_prefix(2);
    base = 16;
  }
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out, base);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    invalid("config: bad value for '" + std::string(key) + "': '" + std::string(v) + "'");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  for (const auto& [name, scheme] : kCanonical) {
    if (scheme == s) return name;
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& [n, s] : kCanonical) {
    if (n == lower) return s;
  }
  for (const auto& [n, s] : kAliases) {
    if (n == lower) return s;
  }
  invalid("unknown scheme '" + std::string(name) + "'");
}

bool is_recursive(Scheme s) {
  switch (s) {
    case Scheme::KarpRabin:
    case Scheme::General:
    case Scheme::RamBufferedGeneral:
    case Scheme::Cyclic:
      return true;
    case Scheme::ThreeWise:
    case Scheme::TruncatedCyclic:
      return false;
  }
  return false;
}

int HasherConfig::output_width() const {
  return scheme == Scheme::TruncatedCyclic ? width - n + 1 : width;
}

int HasherConfig::effective_drop_offset() const {
  if (drop_offset) return *drop_offset;
  return width > 0 ? (width - n + 1) % width : 0;
}

Modulus HasherConfig::modulus() const {
  switch (scheme) {
    case Scheme::General:
    case Scheme::RamBufferedGeneral:
      return Modulus::irreducible(poly.is_zero() ? default_irreducible(width) : poly);
    case Scheme::Cyclic:
    case Scheme::TruncatedCyclic:
      return Modulus::cyclic(width);
    default:
      throw std::logic_error("scheme '" + std::string(scheme_name(scheme)) + "' has no polynomial modulus");
  }
}

std::size_t HasherConfig::table_count() const {
  return scheme == Scheme::ThreeWise ? static_cast<std::size_t>(n) : 1;
}

void HasherConfig::validate() const {
  if (n < 1) invalid("n must be >= 1, got " + std::to_string(n));
  if (width < 1 || width > kMaxWidth) {
    invalid("L must be in [1, " + std::to_string(kMaxWidth) + "], got " + std::to_string(width));
  }
  switch (scheme) {
    case Scheme::ThreeWise:
    case Scheme::KarpRabin:
      break;
    case Scheme::RamBufferedGeneral:
      if (k_split < 1 || n % k_split != 0) {
        invalid("k_split must divide n (k_split=" + std::to_string(k_split) + ", n=" + std::to_string(n) + ")");
      }
      [[fallthrough]];
    case Scheme::General: {
      if (width < n) invalid("General requires L >= n (L=" + std::to_string(width) + ", n=" + std::to_string(n) + ")");
      if (!poly.is_zero() && !(degree(poly) == width)) {
        invalid("polynomial " + to_monomial_string(poly) + " does not have degree L=" + std::to_string(width));
      }
      (void)modulus();  // throws if reducible
      break;
    }
    case Scheme::TruncatedCyclic: {
      const int off = effective_drop_offset();
      if (off < 0 || off >= width) {
        invalid("drop_offset must be in [0, L), got " + std::to_string(off));
      }
      [[fallthrough]];
    }
    case Scheme::Cyclic:
      if (width < n) invalid("Cyclic requires L >= n (L=" + std::to_string(width) + ", n=" + std::to_string(n) + ")");
      break;
  }
}

std::string HasherConfig::to_text() const {
  std::ostringstream out;
  out << "scheme=" << scheme_name(scheme) << '\n';
  out << "n=" << n << '\n';
  out << "L=" << width << '\n';
  if (scheme == Scheme::KarpRabin) out << "B=" << base << '\n';
  if (scheme == Scheme::General || scheme == Scheme::RamBufferedGeneral) {
    out << "p=" << to_hex(modulus().poly()) << '\n';
  }
  if (scheme == Scheme::RamBufferedGeneral) out << "k_split=" << k_split << '\n';
  if (scheme == Scheme::TruncatedCyclic) out << "drop_offset=" << effective_drop_offset() << '\n';
  out << "seed=" << seed << '\n';
  return out.str();
}

HasherConfig HasherConfig::from_text(std::string_view text) {
  HasherConfig cfg;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) invalid("config: expected key=value, got '" + std::string(line) + "'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "scheme") {
      cfg.scheme = parse_scheme(value);
    } else if (key == "n") {
      cfg.n = parse_number<int>(key, value);
    } else if (key == "L") {
      cfg.width = parse_number<int>(key, value);
    } else if (key == "B") {
      cfg.base = parse_number<Word>(key, value);
    } else if (key == "p") {
      cfg.poly = parse_poly(value);
    } else if (key == "k_split" || key == "K") {
      cfg.k_split = parse_number<int>(key, value);
    } else if (key == "drop_offset") {
      cfg.drop_offset = parse_number<int>(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value);
    } else {
      invalid("config: unknown key '" + std::string(key) + "'");
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace ngram
