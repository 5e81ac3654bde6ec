#include "ngramhash/rolling.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ngram {

namespace {

const Word* single_table(const HasherConfig& cfg, std::span<const CharHashTable> tables) {
  if (tables.size() != 1) {
    throw std::invalid_argument(std::string(scheme_name(cfg.scheme)) + " needs exactly one character table, got " +
                                std::to_string(tables.size()));
  }
  return tables.front().values().data();
}

void check_tables(const HasherConfig& cfg, std::span<const CharHashTable> tables) {
  if (tables.size() != cfg.table_count()) {
    throw std::invalid_argument(std::string(scheme_name(cfg.scheme)) + " needs " + std::to_string(cfg.table_count()) +
                                " character tables, got " + std::to_string(tables.size()));
  }
  for (const auto& t : tables) {
    if (t.width() != cfg.width) {
      throw std::invalid_argument("character table width " + std::to_string(t.width()) + " != L=" +
                                  std::to_string(cfg.width));
    }
    if (t.alphabet_size() != tables.front().alphabet_size()) {
      throw std::invalid_argument("character tables disagree on alphabet size");
    }
  }
}

Word pow_mod_2l(Word base, int exponent, Word mask) {
  Word r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r & mask;
}

}  // namespace

Word truncate_window(Word v, int drop_offset, int n, int width) {
  if (width < 1 || width > kMaxWidth) throw std::invalid_argument("truncate_window: L out of range");
  if (n < 1 || n > width) throw std::invalid_argument("truncate_window: need 1 <= n <= L");
  if (drop_offset < 0 || drop_offset >= width) throw std::invalid_argument("truncate_window: drop_offset not in [0, L)");
  return detail::drop_bits_raw(v & low_mask(width), drop_offset, n, width);
}

ShiftTables ShiftTables::build(const Modulus& p, int n, int k_split, std::size_t budget_bytes) {
  const int width = p.width();
  if (n < 1 || n > width) throw std::invalid_argument("shift tables need 1 <= n <= L");
  if (k_split < 1 || n % k_split != 0) {
    throw std::invalid_argument("K=" + std::to_string(k_split) + " does not divide n=" + std::to_string(n));
  }
  const int slice = n / k_split;
  const double bytes = static_cast<double>(k_split) * std::ldexp(1.0, slice) * sizeof(Word);
  if (slice >= 48 || bytes > static_cast<double>(budget_bytes)) {
    throw std::invalid_argument("shift tables need " + std::to_string(static_cast<unsigned long long>(bytes)) +
                                " bytes, over the budget of " + std::to_string(budget_bytes));
  }

  ShiftTables t;
  t.n_ = n;
  t.parts_ = k_split;
  t.slice_bits_ = slice;
  t.low_bits_ = width - n;
  t.low_mask_ = low_mask(width - n);
  t.slice_mask_ = low_mask(slice);
  const std::size_t per_part = std::size_t{1} << slice;
  t.entries_.assign(per_part * static_cast<std::size_t>(k_split), 0);

  for (int j = 0; j < k_split; ++j) {
    Word* part = t.entries_.data() + static_cast<std::size_t>(j) * per_part;
    // x^n * x^(L-n + j*slice + b) = x^(L + j*slice + b); extend by linearity.
    std::vector<Word> basis(static_cast<std::size_t>(slice));
    for (int b = 0; b < slice; ++b) {
      basis[static_cast<std::size_t>(b)] = monomial_mod(static_cast<unsigned>(width + j * slice + b), p).bits;
    }
    for (std::size_t v = 1; v < per_part; ++v) {
      part[v] = part[v & (v - 1)] ^ basis[static_cast<std::size_t>(std::countr_zero(v))];
    }
  }
  return t;
}

std::vector<CharHashTable> make_tables(const HasherConfig& cfg, std::size_t alphabet_size) {
  return random_tables(cfg.width, alphabet_size, cfg.seed, cfg.table_count());
}

GramHasher::GramHasher(const HasherConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const auto n = static_cast<std::size_t>(cfg_.n);
  coeff_.resize(n);
  switch (cfg_.scheme) {
    case Scheme::ThreeWise:
      break;
    case Scheme::KarpRabin:
      for (std::size_t i = 0; i < n; ++i) coeff_[i] = pow_mod_2l(cfg_.base, static_cast<int>(n - 1 - i), low_mask(cfg_.width));
      break;
    case Scheme::General:
    case Scheme::RamBufferedGeneral:
    case Scheme::Cyclic:
    case Scheme::TruncatedCyclic:
      modulus_ = cfg_.modulus();
      for (std::size_t i = 0; i < n; ++i) coeff_[i] = monomial_mod(static_cast<unsigned>(n - 1 - i), *modulus_).bits;
      break;
  }
}

Word GramHasher::operator()(std::span<const Word> flat, std::size_t alphabet, std::span<const Symbol> gram) const {
  const auto n = static_cast<std::size_t>(cfg_.n);
  if (gram.size() != n) {
    throw std::invalid_argument("gram length " + std::to_string(gram.size()) + " != n=" + std::to_string(n));
  }
  if (flat.size() != alphabet * cfg_.table_count()) {
    throw std::invalid_argument("expected " + std::to_string(cfg_.table_count()) + " tables of " +
                                std::to_string(alphabet) + " entries");
  }
  for (Symbol c : gram) {
    if (c >= alphabet) {
      throw std::out_of_range("symbol " + std::to_string(c) + " outside alphabet of size " + std::to_string(alphabet));
    }
  }
  switch (cfg_.scheme) {
    case Scheme::ThreeWise: {
      // h_1(s_1) ^ ... ^ h_n(s_n)
      Word x = 0;
      for (std::size_t i = 0; i < n; ++i) x ^= flat[i * alphabet + gram[i]];
      return x;
    }
    case Scheme::KarpRabin: {
      // sum h1(s_i) B^(n-i) mod 2^L
      Word x = 0;
      for (std::size_t i = 0; i < n; ++i) x += flat[gram[i]] * coeff_[i];
      return x & low_mask(cfg_.width);
    }
    case Scheme::General:
    case Scheme::RamBufferedGeneral:
    case Scheme::Cyclic:
    case Scheme::TruncatedCyclic: {
      // sum h1(s_i) x^(n-i) mod p
      GF2Poly x;
      for (std::size_t i = 0; i < n; ++i) x += mul_mod(GF2Poly{flat[gram[i]]}, GF2Poly{coeff_[i]}, *modulus_);
      if (cfg_.scheme != Scheme::TruncatedCyclic) return x.bits;
      return truncate_window(x.bits, cfg_.effective_drop_offset(), cfg_.n, cfg_.width);
    }
  }
  throw std::logic_error("unhandled scheme");
}

Word hash_full(const HasherConfig& cfg, std::span<const CharHashTable> tables, std::span<const Symbol> gram) {
  const GramHasher eval(cfg);
  check_tables(cfg, tables);
  std::vector<Word> flat;
  for (const auto& t : tables) flat.insert(flat.end(), t.values().begin(), t.values().end());
  return eval(flat, tables.front().alphabet_size(), gram);
}

namespace family {

ThreeWise::ThreeWise(const HasherConfig& cfg, std::span<const CharHashTable> tables)
    : alphabet_(tables.front().alphabet_size()), n_(static_cast<std::size_t>(cfg.n)) {
  flat_.reserve(alphabet_ * n_);
  for (const auto& t : tables) flat_.insert(flat_.end(), t.values().begin(), t.values().end());
}

KarpRabin::KarpRabin(const HasherConfig& cfg, std::span<const CharHashTable> tables)
    : h_(single_table(cfg, tables)),
      base_(cfg.base),
      base_pow_n_(pow_mod_2l(cfg.base, cfg.n, low_mask(cfg.width))),
      mask_(low_mask(cfg.width)) {}

General::General(const HasherConfig& cfg, std::span<const CharHashTable> tables)
    : h_(single_table(cfg, tables)), poly_(cfg.modulus().poly().bits), width_(cfg.width), n_(cfg.n) {}

RamBufferedGeneral::RamBufferedGeneral(const HasherConfig& cfg, std::span<const CharHashTable> tables)
    : h_(single_table(cfg, tables)),
      shifts_(std::make_shared<const ShiftTables>(
          ShiftTables::build(cfg.modulus(), cfg.n, cfg.k_split, cfg.shift_table_budget))),
      poly_(cfg.modulus().poly().bits),
      width_(cfg.width) {}

Cyclic::Cyclic(const HasherConfig& cfg, std::span<const CharHashTable> tables)
    : h_(single_table(cfg, tables)),
      width_(static_cast<unsigned>(cfg.width)),
      rot1_(1 % width_),
      mask_(low_mask(cfg.width)) {
  const auto n_rot = static_cast<unsigned>(cfg.n) % width_;
  for (Word v : tables.front().values()) h_out_.push_back(detail::rotl_raw(v, n_rot, cfg.width));
  lane_ = (64 - width_) / width_ * width_;
  if (lane_ > 0) {
    for (std::size_t c = 0; c < h_out_.size(); ++c) {
      rep_in_.push_back(replicate(h_[c]));
      rep_out_.push_back(replicate(h_out_[c]));
    }
  }
}

TruncatedCyclic::TruncatedCyclic(const HasherConfig& cfg, std::span<const CharHashTable> tables)
    : inner_(cfg, tables), drop_(cfg.effective_drop_offset()), n_(cfg.n), width_(cfg.width) {}

}  // namespace family

namespace {

template <std::size_t I = 0>
NgramHasher::Impl make_impl(const HasherConfig& cfg, std::shared_ptr<const std::vector<CharHashTable>> tables) {
  if constexpr (I < std::variant_size_v<NgramHasher::Impl>) {
    if (static_cast<std::size_t>(cfg.scheme) == I) {
      return NgramHasher::Impl{std::in_place_index<I>, cfg, std::move(tables)};
    }
    return make_impl<I + 1>(cfg, std::move(tables));
  } else {
    throw std::logic_error("unhandled scheme");
  }
}

std::shared_ptr<const std::vector<CharHashTable>> checked(const HasherConfig& cfg, std::vector<CharHashTable> tables) {
  cfg.validate();
  check_tables(cfg, tables);
  return std::make_shared<const std::vector<CharHashTable>>(std::move(tables));
}

}  // namespace

NgramHasher::NgramHasher(const HasherConfig& cfg, std::vector<CharHashTable> tables)
    : cfg_(cfg), tables_(checked(cfg, std::move(tables))), impl_(make_impl(cfg_, tables_)) {}

NgramHasher::NgramHasher(const HasherConfig& cfg, std::size_t alphabet_size)
    : NgramHasher(cfg, make_tables(cfg, alphabet_size)) {}

void NgramHasher::reset() noexcept {
  std::visit([](auto& r) { r.reset(); }, impl_);
}

std::optional<Word> NgramHasher::eat(Symbol c) {
  return std::visit([c](auto& r) { return r.eat(c); }, impl_);
}

std::span<const Symbol> NgramHasher::window() const noexcept {
  return std::visit([](const auto& r) { return r.window(); }, impl_);
}

}  // namespace ngram
