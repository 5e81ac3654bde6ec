#pragma once

// Streaming n-gram hashers. Every family shares one FIFO driver (Roller) and
// contributes only its update rule; NgramHasher erases the family type.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "ngramhash/charhash.hpp"
#include "ngramhash/config.hpp"
#include "ngramhash/gf2poly.hpp"

namespace ngram {

/// Removes the n-1 bits at positions drop_offset, ..., drop_offset+n-2
/// (mod L) and packs the L-n+1 survivors into the low bits, keeping their
/// relative order.
Word truncate_window(Word v, int drop_offset, int n, int width);

namespace detail {

/// truncate_window without argument checks; v must have degree < L.
constexpr Word drop_bits_raw(Word v, int drop_offset, int n, int width) noexcept {
  const int end = drop_offset + n - 1;  // one past the dropped window, unwrapped
  if (end <= width) {
    return (v & low_mask(drop_offset)) | ((v >> end) << drop_offset);
  }
  // Window wraps: the survivors are the contiguous run [end - L, drop_offset).
  return (v >> (end - width)) & low_mask(width - n + 1);
}

}  // namespace detail

/// Multiplication by x^n in GF(2)[x]/p(x) through K lookup tables over the
/// top n bit positions (see build()).
class ShiftTables {
 public:
  /// Part j covers bits [L-n + j*n/K, L-n + (j+1)*n/K) and holds
  /// x^n * v mod p for every v supported there. Throws std::invalid_argument
  /// if K does not divide n, n > L, or the tables exceed budget_bytes.
  static ShiftTables build(const Modulus& p, int n, int k_split,
                           std::size_t budget_bytes = kDefaultShiftTableBudget);

  /// x^n * h mod p, for h of degree < L.
  Word apply(Word h) const noexcept {
    Word r = (h & low_mask_) << n_;
    for (int j = 0; j < parts_; ++j) {
      r ^= entries_[(static_cast<std::size_t>(j) << slice_bits_) + ((h >> (low_bits_ + j * slice_bits_)) & slice_mask_)];
    }
    return r;
  }

  int parts() const noexcept { return parts_; }
  std::span<const Word> part(int j) const {
    return std::span<const Word>(entries_).subspan(static_cast<std::size_t>(j) << slice_bits_,
                                                   std::size_t{1} << slice_bits_);
  }
  std::size_t memory_bytes() const noexcept { return entries_.size() * sizeof(Word); }

 private:
  std::vector<Word> entries_;
  Word low_mask_ = 0;
  Word slice_mask_ = 0;
  int n_ = 0;
  int low_bits_ = 0;
  int slice_bits_ = 0;
  int parts_ = 0;
};

/// Character tables for a configuration: n tables for ThreeWise, one otherwise,
/// drawn from cfg.seed.
std::vector<CharHashTable> make_tables(const HasherConfig& cfg, std::size_t alphabet_size);

/// Closed-form (non-streaming) evaluation of one n-gram for a fixed
/// configuration, over character tables supplied as one flat array: table t
/// occupies [t * alphabet, (t + 1) * alphabet).
class GramHasher {
 public:
  /// Validates cfg and precomputes the per-position coefficients.
  explicit GramHasher(const HasherConfig& cfg);

  /// Throws std::invalid_argument on a wrong gram length or a table array of
  /// the wrong size, std::out_of_range on an out-of-alphabet symbol.
  Word operator()(std::span<const Word> flat_tables, std::size_t alphabet, std::span<const Symbol> gram) const;

  const HasherConfig& config() const noexcept { return cfg_; }

 private:
  HasherConfig cfg_;
  // B^(n-1-i) mod 2^L, x^(n-1-i) mod p, or the rotation n-1-i, per position i.
  std::vector<Word> coeff_;
  std::optional<Modulus> modulus_;
};

/// Non-streaming reference value of one n-gram. Throws std::invalid_argument
/// on a wrong gram length or table set, std::out_of_range on an
/// out-of-alphabet symbol.
Word hash_full(const HasherConfig& cfg, std::span<const CharHashTable> tables, std::span<const Symbol> gram);

namespace detail {

/// Plain char may be signed; bytes map to [0, 256).
template <class T>
constexpr Symbol to_symbol(T raw) noexcept {
  return static_cast<Symbol>(static_cast<std::make_unsigned_t<T>>(raw));
}

}  // namespace detail

namespace family {

// Each family: reset(), absorb(in, out, has_out), value(window).
// `out` is the symbol leaving the window as `in` enters; has_out is false
// while the window is still filling.

class ThreeWise {
 public:
  ThreeWise(const HasherConfig& cfg, std::span<const CharHashTable> tables);
  void reset() noexcept {}
  void absorb(Symbol, Symbol, bool) noexcept {}
  /// `window` points at n symbols, oldest first; T is Symbol or a byte type.
  template <class T>
  Word value(const T* window) const noexcept {
    Word x = 0;
    for (std::size_t i = 0; i < n_; ++i) x ^= flat_[i * alphabet_ + detail::to_symbol(window[i])];
    return x;
  }

 private:
  std::vector<Word> flat_;  // table i at [i * alphabet_, (i + 1) * alphabet_)
  std::size_t alphabet_;
  std::size_t n_;
};

class KarpRabin {
 public:
  KarpRabin(const HasherConfig& cfg, std::span<const CharHashTable> tables);
  void reset() noexcept { x_ = 0; }
  void absorb(Symbol in, Symbol out, bool has_out) noexcept {
    const Word z = has_out ? h_[out] : 0;
    x_ = (base_ * x_ - base_pow_n_ * z + h_[in]) & mask_;
  }
  template <class T>
  Word value(const T*) const noexcept {
    return x_;
  }

 private:
  const Word* h_;
  Word base_;
  Word base_pow_n_;
  Word mask_;
  Word x_ = 0;
};

class General {
 public:
  General(const HasherConfig& cfg, std::span<const CharHashTable> tables);
  void reset() noexcept { x_ = 0; }
  void absorb(Symbol in, Symbol out, bool has_out) noexcept {
    Word z = has_out ? h_[out] : 0;
    x_ = detail::shift_mod_raw(x_, poly_, width_);
    for (int i = 0; i < n_; ++i) z = detail::shift_mod_raw(z, poly_, width_);
    x_ ^= z ^ h_[in];
  }
  template <class T>
  Word value(const T*) const noexcept {
    return x_;
  }

 private:
  const Word* h_;
  Word poly_;
  int width_;
  int n_;
  Word x_ = 0;
};

class RamBufferedGeneral {
 public:
  RamBufferedGeneral(const HasherConfig& cfg, std::span<const CharHashTable> tables);
  void reset() noexcept { x_ = 0; }
  void absorb(Symbol in, Symbol out, bool has_out) noexcept {
    const Word z = has_out ? shifts_->apply(h_[out]) : 0;
    x_ = detail::shift_mod_raw(x_, poly_, width_) ^ z ^ h_[in];
  }
  template <class T>
  Word value(const T*) const noexcept {
    return x_;
  }

 private:
  const Word* h_;
  std::shared_ptr<const ShiftTables> shifts_;
  Word poly_;
  int width_;
  Word x_ = 0;
};

class Cyclic {
 public:
  Cyclic(const HasherConfig& cfg, std::span<const CharHashTable> tables);
  void reset() noexcept { x_ = 0; }
  void absorb(Symbol in, Symbol out, bool has_out) noexcept {
    // x < 2^L and L < 64, so a zero rotation needs no special case.
    const Word rotated = ((x_ << rot1_) | (x_ >> (width_ - rot1_))) & mask_;
    x_ = rotated ^ (has_out ? h_out_[out] : 0) ^ h_[in];
  }
  template <class T>
  Word value(const T*) const noexcept {
    return x_;
  }

  /// Whether roll() applies: two copies of an L-bit value fit in a word.
  bool can_roll() const noexcept { return lane_ > 0; }

  /// Rolls data[begin, end) in, data[j - n] leaving as data[j] enters, and
  /// calls sink with each hash. Symbols must already be in range.
  // The state is held replicated with period L across the word, so a plain
  // left shift rotates every copy except the lowest k bits after k steps; the
  // copy at bit lane_ stays exact for lane_ steps before re-replication.
  template <class T, class Sink>
  void roll(const T* data, std::size_t begin, std::size_t end, std::size_t n, Sink& sink) {
    const Word* rep_in = rep_in_.data();
    const Word* rep_out = rep_out_.data();
    const unsigned lane = lane_;
    const Word mask = mask_;
    Word x = x_;
    for (std::size_t j = begin; j < end;) {
      Word rep = replicate(x);
      const std::size_t stop = std::min<std::size_t>(end, j + lane);
      for (; j < stop; ++j) {
        rep = (rep << 1) ^ rep_in[detail::to_symbol(data[j])] ^ rep_out[detail::to_symbol(data[j - n])];
        sink((rep >> lane) & mask);
      }
      x = (rep >> lane) & mask;
    }
    x_ = x;
  }

 private:
  Word replicate(Word v) const noexcept {
    Word r = 0;
    for (unsigned s = 0; s < 64; s += width_) r |= v << s;
    return r;
  }

  const Word* h_;
  std::vector<Word> h_out_;  // h1 rotated left by n, for the leaving symbol
  std::vector<Word> rep_in_, rep_out_;  // h_ and h_out_ replicated; empty unless can_roll()
  unsigned width_;
  unsigned rot1_;
  unsigned lane_ = 0;  // largest multiple of L with lane_ + L <= 64
  Word mask_;
  Word x_ = 0;
};

class TruncatedCyclic {
 public:
  TruncatedCyclic(const HasherConfig& cfg, std::span<const CharHashTable> tables);
  void reset() noexcept { inner_.reset(); }
  void absorb(Symbol in, Symbol out, bool has_out) noexcept { inner_.absorb(in, out, has_out); }
  template <class T>
  Word value(const T* w) const noexcept {
    return detail::drop_bits_raw(inner_.value(w), drop_, n_, width_);
  }

  bool can_roll() const noexcept { return inner_.can_roll(); }

  template <class T, class Sink>
  void roll(const T* data, std::size_t begin, std::size_t end, std::size_t n, Sink& sink) {
    auto drop = [&](Word v) { sink(detail::drop_bits_raw(v, drop_, n_, width_)); };
    inner_.roll(data, begin, end, n, drop);
  }

 private:
  Cyclic inner_;
  int drop_;
  int n_;
  int width_;
};

}  // namespace family

/// FIFO driver shared by every family. Owns a reference to the character
/// tables; copies of a Roller share them.
template <class Family>
class Roller {
 public:
  Roller(const HasherConfig& cfg, std::shared_ptr<const std::vector<CharHashTable>> tables)
      : tables_(std::move(tables)),
        family_(cfg, *tables_),
        n_(static_cast<std::size_t>(cfg.n)),
        alphabet_(tables_->front().alphabet_size()),
        buf_(2 * n_) {}

  void reset() noexcept {
    family_.reset();
    filled_ = 0;
    head_ = 0;
  }

  /// Absorbs one symbol; returns the hash of the window once it holds n symbols.
  /// Throws std::out_of_range for a symbol outside the alphabet.
  std::optional<Word> eat(Symbol c) {
    check(c);
    if (push(c)) return family_.value(buf_.data() + head_);
    return std::nullopt;
  }

  /// Feeds every symbol of `symbols`, calling sink(hash) for each full window.
  template <class Range, class Sink>
  void eat_all(const Range& symbols, Sink&& sink) {
    using T = std::remove_cvref_t<decltype(*std::begin(symbols))>;
    const bool checked = !(sizeof(T) == 1 && alphabet_ >= kByteAlphabet);
    if constexpr (std::ranges::contiguous_range<Range>) {
      if (checked) {
        eat_contiguous<true>(std::ranges::data(symbols), std::ranges::size(symbols), sink);
      } else {
        eat_contiguous<false>(std::ranges::data(symbols), std::ranges::size(symbols), sink);
      }
    } else {
      for (const auto& raw : symbols) {
        const Symbol c = detail::to_symbol(raw);
        if (checked) check(c);
        if (push(c)) sink(family_.value(buf_.data() + head_));
      }
    }
  }

  /// Current window contents, oldest first (fewer than n while filling).
  std::span<const Symbol> window() const noexcept { return {buf_.data() + head_, filled_}; }
  std::size_t n() const noexcept { return n_; }
  std::size_t alphabet_size() const noexcept { return alphabet_; }

 private:
  void check(Symbol c) const {
    if (c >= alphabet_) {
      throw std::out_of_range("symbol " + std::to_string(c) + " outside alphabet of size " +
                              std::to_string(alphabet_));
    }
  }

  // Once n symbols of the input are in, windows and leaving symbols are read
  // straight from the input; the ring is rebuilt from its tail at the end.
  template <bool Checked, class T, class Sink>
  void eat_contiguous(const T* data, std::size_t size, Sink& sink) {
    std::size_t j = 0;
    for (; j < size && j < n_; ++j) {
      const Symbol c = detail::to_symbol(data[j]);
      if constexpr (Checked) check(c);
      if (push(c)) sink(family_.value(buf_.data() + head_));
    }
    if (j == size) return;
    // A local copy keeps the rolling state in registers; stores through the
    // sink could otherwise alias it.
    struct Restore {
      Family& dst;
      Family& src;
      ~Restore() { dst = std::move(src); }
    };
    Family f = std::move(family_);
    const Restore restore{family_, f};
    if constexpr (!Checked && requires { f.roll(data, j, size, n_, sink); }) {
      if (f.can_roll()) {
        f.roll(data, j, size, n_, sink);
        j = size;
      }
    }
    for (; j < size; ++j) {
      const Symbol c = detail::to_symbol(data[j]);
      if constexpr (Checked) check(c);
      f.absorb(c, detail::to_symbol(data[j - n_]), true);
      sink(f.value(data + (j + 1 - n_)));
    }
    head_ = 0;
    for (std::size_t i = 0; i < n_; ++i) buf_[i] = buf_[i + n_] = detail::to_symbol(data[size - n_ + i]);
  }

  // Returns true when the window is full after the push.
  bool push(Symbol c) noexcept {
    if (filled_ == n_) {
      const Symbol out = buf_[head_];
      buf_[head_] = c;
      buf_[head_ + n_] = c;
      head_ = head_ + 1 == n_ ? 0 : head_ + 1;
      family_.absorb(c, out, true);
      return true;
    }
    buf_[filled_] = c;
    buf_[filled_ + n_] = c;
    ++filled_;
    family_.absorb(c, 0, false);
    return filled_ == n_;
  }

  std::shared_ptr<const std::vector<CharHashTable>> tables_;
  Family family_;
  std::size_t n_;
  std::size_t alphabet_;
  // Doubled ring: the window is always contiguous at buf_[head_, head_ + n).
  std::vector<Symbol> buf_;
  std::size_t filled_ = 0;
  std::size_t head_ = 0;
};

/// Type-erased streaming hasher over any Scheme.
class NgramHasher {
 public:
  using Impl = std::variant<Roller<family::ThreeWise>, Roller<family::KarpRabin>, Roller<family::General>,
                            Roller<family::RamBufferedGeneral>, Roller<family::Cyclic>,
                            Roller<family::TruncatedCyclic>>;

  /// Validates cfg and the tables (count, width, common alphabet).
  NgramHasher(const HasherConfig& cfg, std::vector<CharHashTable> tables);
  /// Random tables drawn from cfg.seed.
  NgramHasher(const HasherConfig& cfg, std::size_t alphabet_size);

  void reset() noexcept;
  std::optional<Word> eat(Symbol c);
  std::span<const Symbol> window() const noexcept;

  template <class Range, class Sink>
  void eat_all(const Range& symbols, Sink&& sink) {
    std::visit([&](auto& r) { r.eat_all(symbols, sink); }, impl_);
  }

  /// Runs fn on the concrete Roller; use for tight loops.
  template <class Fn>
  decltype(auto) visit(Fn&& fn) {
    return std::visit(std::forward<Fn>(fn), impl_);
  }

  const HasherConfig& config() const noexcept { return cfg_; }
  std::span<const CharHashTable> tables() const noexcept { return *tables_; }

 private:
  HasherConfig cfg_;
  std::shared_ptr<const std::vector<CharHashTable>> tables_;
  Impl impl_;
};

/// Hashes a whole sequence, returning one value per complete n-gram.
template <class Range>
std::vector<Word> hash_all(NgramHasher& hasher, const Range& symbols) {
  std::vector<Word> out;
  hasher.eat_all(symbols, [&](Word v) { out.push_back(v); });
  return out;
}

}  // namespace ngram
