#include "ngramhash/indeptest.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <thread>

#include "ngramhash/rolling.hpp"

namespace ngram {

int FamilySpec::entry_bits() const {
  return cfg.width * static_cast<int>(alphabet_size) * static_cast<int>(cfg.table_count());
}

std::uint64_t FamilySpec::family_size() const {
  if (alphabet_size == 0) throw std::invalid_argument("alphabet must be non-empty");
  const std::uint64_t tables = cfg.table_count();
  // Compare in the log domain first so the shift below cannot overflow.
  if (static_cast<std::uint64_t>(cfg.width) * alphabet_size * tables >= 63 ||
      (std::uint64_t{1} << entry_bits()) > cap) {
    throw EnumerationCapExceeded("family of 2^" +
                                 std::to_string(static_cast<std::uint64_t>(cfg.width) * alphabet_size * tables) +
                                 " members exceeds the cap of " + std::to_string(cap));
  }
  return std::uint64_t{1} << entry_bits();
}

std::string Property::name() const {
  switch (kind) {
    case PropertyKind::Uniform:
      return "uniform";
    case PropertyKind::TwoUniversal:
      return "2-universal";
    case PropertyKind::PairwiseIndependent:
      return "pairwise";
    case PropertyKind::KWise:
      return std::to_string(k) + "-wise";
    case PropertyKind::TrailingZeroKWise:
      return "trailing-zero " + std::to_string(k) + "-wise";
  }
  return "?";
}

std::string gram_to_string(std::span<const Symbol> gram) {
  std::string s;
  for (Symbol c : gram) s += c < 26 ? static_cast<char>('a' + c) : '?';
  return s;
}

Gram gram_from_string(std::string_view s) {
  Gram g;
  for (char ch : s) {
    if (ch < 'a' || ch > 'z') throw std::invalid_argument("gram symbols must be in a..z: " + std::string(s));
    g.push_back(static_cast<Symbol>(ch - 'a'));
  }
  return g;
}

std::string tuple_to_string(const GramTuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + gram_to_string(t[i]);
  return s + ")";
}

std::vector<Gram> all_grams(int n, std::size_t alphabet) {
  if (n < 1 || alphabet == 0) throw std::invalid_argument("all_grams needs n >= 1 and a non-empty alphabet");
  std::vector<Gram> out;
  Gram g(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.push_back(g);
    int i = n - 1;
    while (i >= 0 && g[static_cast<std::size_t>(i)] + 1 == alphabet) g[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return out;
    ++g[static_cast<std::size_t>(i)];
  }
}

std::vector<GramTuple> distinct_tuples(std::span<const Gram> grams, int k) {
  std::vector<GramTuple> out;
  const auto m = grams.size();
  const auto kk = static_cast<std::size_t>(k);
  if (k < 1 || kk > m) return out;
  std::vector<std::size_t> idx(kk);
  for (std::size_t i = 0; i < kk; ++i) idx[i] = i;
  for (;;) {
    GramTuple t;
    for (auto i : idx) t.push_back(grams[i]);
    out.push_back(std::move(t));
    std::size_t i = kk;
    while (i > 0 && idx[i - 1] == m - kk + i - 1) --i;
    if (i == 0) return out;
    ++idx[i - 1];
    for (std::size_t j = i; j < kk; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<GramTuple> default_tuples(const FamilySpec& spec, int k) {
  auto tuples = distinct_tuples(all_grams(spec.cfg.n, spec.alphabet_size), k);
  if (tuples.size() > kMaxDefaultTuples) {
    throw std::invalid_argument(std::to_string(tuples.size()) + " distinct " + std::to_string(k) +
                                "-tuples; pass an explicit list");
  }
  return tuples;
}

int zeros(Word v, int width) { return v == 0 ? width : std::countr_zero(v); }

namespace {

bool is_trailing_zero(const Property& p) { return p.kind == PropertyKind::TrailingZeroKWise; }

struct Plan {
  std::vector<Gram> grams;  // distinct grams across all tuples
  std::vector<std::vector<std::size_t>> tuple_index;
  std::size_t cells = 0;
};

Plan make_plan(const FamilySpec& spec, const std::vector<GramTuple>& tuples, const Property& property) {
  const int W = spec.output_width();
  const int k = property.k;
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  Plan plan;
  std::uint64_t cells = 1;
  for (int i = 0; i < k; ++i) {
    cells *= is_trailing_zero(property) ? static_cast<std::uint64_t>(W + 1) : (std::uint64_t{1} << W);
    if (cells > (std::uint64_t{1} << kMaxCellBits)) {
      throw EnumerationCapExceeded("too many cells per tuple for " + property.name() + " at W=" + std::to_string(W));
    }
  }
  plan.cells = static_cast<std::size_t>(cells);
  std::map<Gram, std::size_t> seen;
  for (const auto& t : tuples) {
    if (t.size() != static_cast<std::size_t>(k)) {
      throw std::invalid_argument("tuple " + tuple_to_string(t) + " has " + std::to_string(t.size()) +
                                  " grams, expected " + std::to_string(k));
    }
    std::vector<std::size_t> ids;
    for (const auto& g : t) {
      if (g.size() != static_cast<std::size_t>(spec.cfg.n)) {
        throw std::invalid_argument("gram " + gram_to_string(g) + " has length != n");
      }
      for (Symbol c : g) {
        if (c >= spec.alphabet_size) throw std::out_of_range("gram " + gram_to_string(g) + " leaves the alphabet");
      }
      auto [it, inserted] = seen.emplace(g, plan.grams.size());
      if (inserted) plan.grams.push_back(g);
      if (std::find(ids.begin(), ids.end(), it->second) != ids.end()) {
        throw std::invalid_argument("duplicate gram in tuple " + tuple_to_string(t));
      }
      ids.push_back(it->second);
    }
    plan.tuple_index.push_back(std::move(ids));
  }
  return plan;
}

void decode_member(std::uint64_t m, int width, std::vector<Word>& flat) {
  const Word mask = low_mask(width);
  for (std::size_t e = 0; e < flat.size(); ++e) flat[e] = (m >> (e * static_cast<std::size_t>(width))) & mask;
}

using Counts = std::vector<std::vector<std::uint64_t>>;

void count_range(const FamilySpec& spec, const GramHasher& eval, const Plan& plan, bool tz, std::uint64_t lo,
                 std::uint64_t hi, Counts& counts) {
  const int W = spec.output_width();
  std::vector<Word> flat(spec.alphabet_size * spec.cfg.table_count());
  std::vector<Word> vals(plan.grams.size());
  for (std::uint64_t m = lo; m < hi; ++m) {
    decode_member(m, spec.cfg.width, flat);
    for (std::size_t g = 0; g < plan.grams.size(); ++g) {
      Word v = eval(flat, spec.alphabet_size, plan.grams[g]);
      if (spec.lowest_bit_only) v = g_transform(v);
      vals[g] = tz ? static_cast<Word>(zeros(v, W)) : v;
    }
    for (std::size_t t = 0; t < plan.tuple_index.size(); ++t) {
      std::size_t cell = 0;
      std::size_t stride = 1;
      for (std::size_t i = 0; i < plan.tuple_index[t].size(); ++i) {
        const Word v = vals[plan.tuple_index[t][i]];
        if (tz) {
          cell += static_cast<std::size_t>(v) * stride;
          stride *= static_cast<std::size_t>(W + 1);
        } else {
          cell |= static_cast<std::size_t>(v) << (i * static_cast<std::size_t>(W));
        }
      }
      ++counts[t][cell];
    }
  }
}

std::vector<std::vector<int>> all_j_vectors(int k, int W) {
  std::vector<std::vector<int>> out;
  std::vector<int> j(static_cast<std::size_t>(k), 0);
  for (;;) {
    out.push_back(j);
    int i = k - 1;
    while (i >= 0 && j[static_cast<std::size_t>(i)] == W) j[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return out;
    ++j[static_cast<std::size_t>(i)];
  }
}

void add_failure(IndependenceReport& r, std::size_t tuple, std::vector<Word> cell, std::uint64_t count) {
  ++r.failing_cells;
  if (r.witnesses.size() < IndependenceReport::kMaxWitnesses) r.witnesses.push_back({tuple, std::move(cell), count});
}

void judge(IndependenceReport& r) {
  const int W = r.output_width;
  const int k = r.property.k;
  const auto F = r.family_size;
  for (std::size_t t = 0; t < r.tuples.size(); ++t) {
    switch (r.property.kind) {
      case PropertyKind::Uniform:
      case PropertyKind::PairwiseIndependent:
      case PropertyKind::KWise: {
        // Each value tuple must occur exactly F / 2^(kW) times.
        const auto& row = r.counts[t];
        for (std::size_t cell = 0; cell < row.size(); ++cell) {
          ++r.cells_checked;
          if ((row[cell] << (k * W)) != F) {
            std::vector<Word> values;
            for (int i = 0; i < k; ++i) values.push_back((cell >> (i * W)) & low_mask(W));
            add_failure(r, t, std::move(values), row[cell]);
          }
        }
        break;
      }
      case PropertyKind::TwoUniversal: {
        ++r.cells_checked;
        const auto c = r.collisions(t);
        if ((c << W) > F) add_failure(r, t, {}, c);
        break;
      }
      case PropertyKind::TrailingZeroKWise: {
        for (const auto& j : r.j_vectors) {
          ++r.cells_checked;
          int total = 0;
          for (int x : j) total += x;
          const auto c = r.event_count(t, j);
          if ((c << total) != F) add_failure(r, t, std::vector<Word>(j.begin(), j.end()), c);
        }
        break;
      }
    }
  }
  r.pass = r.failing_cells == 0;
}

}  // namespace

std::uint64_t IndependenceReport::count(std::size_t tuple, std::span<const Word> values) const {
  if (values.size() != static_cast<std::size_t>(property.k) || is_trailing_zero(property)) {
    throw std::invalid_argument("count() takes one value per gram of a value report");
  }
  std::size_t cell = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > low_mask(output_width)) return 0;
    cell |= static_cast<std::size_t>(values[i]) << (i * static_cast<std::size_t>(output_width));
  }
  return counts.at(tuple).at(cell);
}

std::uint64_t IndependenceReport::event_count(std::size_t tuple, std::span<const int> j) const {
  if (!is_trailing_zero(property) || j.size() != static_cast<std::size_t>(property.k)) {
    throw std::invalid_argument("event_count() takes one threshold per gram of a trailing-zero report");
  }
  const auto& row = counts.at(tuple);
  const auto base = static_cast<std::size_t>(output_width + 1);
  std::uint64_t total = 0;
  for (std::size_t cell = 0; cell < row.size(); ++cell) {
    std::size_t rest = cell;
    bool hit = true;
    for (int ji : j) {
      if (static_cast<int>(rest % base) < ji) hit = false;
      rest /= base;
    }
    if (hit) total += row[cell];
  }
  return total;
}

std::uint64_t IndependenceReport::collisions(std::size_t tuple) const {
  if (property.k != 2 || is_trailing_zero(property)) throw std::invalid_argument("collisions() needs a pair report");
  std::uint64_t total = 0;
  for (Word y = 0; y <= low_mask(output_width); ++y) {
    const Word pair[] = {y, y};
    total += count(tuple, pair);
  }
  return total;
}

bool IndependenceReport::rows_sum_to_family_size() const {
  return std::all_of(counts.begin(), counts.end(), [&](const auto& row) {
    std::uint64_t s = 0;
    for (auto c : row) s += c;
    return s == family_size;
  });
}

std::string IndependenceReport::to_text() const {
  std::ostringstream os;
  os << "property: " << property.name() << "\n"
     << "family_size: " << family_size << "\n"
     << "output_width: " << output_width << "\n"
     << "tuples: " << tuples.size() << "\n"
     << "cells_checked: " << cells_checked << "\n"
     << "failing_cells: " << failing_cells << "\n"
     << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
  const int k = property.k;
  for (const auto& w : witnesses) {
    os << "witness: tuple=" << tuple_to_string(tuples[w.tuple_index]);
    if (property.kind == PropertyKind::TwoUniversal) {
      os << " collisions=" << w.count << " bound=" << family_size << "/2^" << output_width;
    } else {
      int shift = k * output_width;
      if (is_trailing_zero(property)) {
        shift = 0;
        for (Word j : w.cell) shift += static_cast<int>(j);
      }
      os << (is_trailing_zero(property) ? " j=(" : " cell=(");
      for (std::size_t i = 0; i < w.cell.size(); ++i) os << (i ? "," : "") << w.cell[i];
      os << ") count=" << w.count << " target=" << family_size << "/2^" << shift;
    }
    os << "\n";
  }
  return os.str();
}

IndependenceReport enumerate_counts(const FamilySpec& spec, const std::vector<GramTuple>& tuples, Property property,
                                    unsigned workers, std::vector<std::vector<int>> j_vectors) {
  const GramHasher eval(spec.cfg);
  const auto F = spec.family_size();
  const Plan plan = make_plan(spec, tuples, property);
  const bool tz = is_trailing_zero(property);
  const int W = spec.output_width();

  IndependenceReport r;
  r.property = property;
  r.family_size = F;
  r.output_width = W;
  r.tuples = tuples;
  if (tz) {
    if (j_vectors.empty()) j_vectors = all_j_vectors(property.k, W);
    for (const auto& j : j_vectors) {
      if (j.size() != static_cast<std::size_t>(property.k) ||
          std::any_of(j.begin(), j.end(), [&](int x) { return x < 0 || x > W; })) {
        throw std::invalid_argument("j-vectors need k components in 0..W");
      }
    }
    r.j_vectors = std::move(j_vectors);
  }

  workers = std::max(1u, workers);
  std::vector<Counts> partial(workers, Counts(tuples.size(), std::vector<std::uint64_t>(plan.cells, 0)));
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = F / workers * w + std::min<std::uint64_t>(w, F % workers);
    const std::uint64_t hi = lo + F / workers + (w < F % workers ? 1 : 0);
    if (workers == 1) {
      count_range(spec, eval, plan, tz, lo, hi, partial[w]);
    } else {
      threads.emplace_back([&, lo, hi, w] { count_range(spec, eval, plan, tz, lo, hi, partial[w]); });
    }
  }
  for (auto& t : threads) t.join();

  r.counts = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) {
    for (std::size_t t = 0; t < r.counts.size(); ++t) {
      for (std::size_t c = 0; c < plan.cells; ++c) r.counts[t][c] += partial[w][t][c];
    }
  }
  judge(r);
  return r;
}

IndependenceReport check_trailing_zero(const FamilySpec& spec, const std::vector<GramTuple>& tuples,
                                       std::vector<std::vector<int>> j_vectors, unsigned workers) {
  if (tuples.empty()) throw std::invalid_argument("no gram tuples");
  const int k = static_cast<int>(tuples.front().size());
  return enumerate_counts(spec, tuples, Property::trailing_zero(k), workers, std::move(j_vectors));
}

namespace {

std::vector<GramTuple> singletons(const FamilySpec& spec) {
  std::vector<GramTuple> out;
  for (auto& g : all_grams(spec.cfg.n, spec.alphabet_size)) out.push_back({g});
  return out;
}

}  // namespace

bool KarpRabinVerdict::matches() const {
  if (uniform.pass != predicted_uniform) return false;
  return !pairwise || pairwise->pass == (n == 1);
}

std::vector<KarpRabinVerdict> check_karp_rabin_matrix(int width, std::span<const int> n_values,
                                                      std::span<const Word> base_values, std::size_t alphabet,
                                                      unsigned workers) {
  std::vector<KarpRabinVerdict> out;
  for (Word b : base_values) {
    for (int n : n_values) {
      FamilySpec spec;
      spec.cfg.scheme = Scheme::KarpRabin;
      spec.cfg.width = width;
      spec.cfg.n = n;
      spec.cfg.base = b;
      spec.alphabet_size = alphabet;
      KarpRabinVerdict v;
      v.base = b;
      v.n = n;
      v.predicted_uniform = b % 2 == 0 || n % 2 == 1;
      v.uniform = enumerate_counts(spec, singletons(spec), Property::uniform(), workers);
      if (alphabet >= 2) v.pairwise = enumerate_counts(spec, default_tuples(spec, 2), Property::pairwise(), workers);
      out.push_back(std::move(v));
    }
  }
  return out;
}

bool ThreeWiseVerdict::matches() const {
  if (!three_wise.pass) return false;
  return !four_wise || (!four_wise->pass && xor_zero_members == four_wise->family_size);
}

ThreeWiseVerdict check_threewise(int width, int n, std::size_t alphabet, unsigned workers) {
  FamilySpec spec;
  spec.cfg.scheme = Scheme::ThreeWise;
  spec.cfg.width = width;
  spec.cfg.n = n;
  spec.alphabet_size = alphabet;
  ThreeWiseVerdict v;
  v.three_wise = enumerate_counts(spec, default_tuples(spec, 3), Property::kwise(3), workers);
  if (n < 2 || alphabet < 2) return v;

  // First two symbols range over {a,b}; the rest stay a.
  GramTuple quad;
  for (Symbol s0 : {0u, 1u}) {
    for (Symbol s1 : {0u, 1u}) {
      Gram g(static_cast<std::size_t>(n), 0);
      g[0] = s0;
      g[1] = s1;
      quad.push_back(g);
    }
  }
  v.four_wise = enumerate_counts(spec, {quad}, Property::kwise(4), workers);

  const GramHasher eval(spec.cfg);
  std::vector<Word> flat(alphabet * spec.cfg.table_count());
  for (std::uint64_t m = 0; m < spec.family_size(); ++m) {
    decode_member(m, width, flat);
    Word x = 0;
    for (const auto& g : quad) x ^= eval(flat, alphabet, g);
    if (x == 0) ++v.xor_zero_members;
  }
  return v;
}

GramTuple collapse_windows(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Gram stream(static_cast<std::size_t>(n), 0);
  stream.push_back(1);
  stream.push_back(1);
  GramTuple out;
  for (std::size_t i = 0; i < 3; ++i) out.emplace_back(stream.begin() + static_cast<std::ptrdiff_t>(i), stream.begin() + static_cast<std::ptrdiff_t>(i) + n);
  return out;
}

CollapseCheck check_recursive_collapse(const FamilySpec& spec, unsigned workers) {
  if (!is_recursive(spec.cfg.scheme)) throw std::invalid_argument("collapse check needs a recursive scheme");
  if (spec.alphabet_size < 2) throw std::invalid_argument("collapse check needs at least two symbols");
  const int n = spec.cfg.n;
  const auto windows = collapse_windows(n);
  if (windows[0] == windows[2]) throw std::invalid_argument("windows coincide for n = 1");

  CollapseCheck c;
  c.family_size = spec.family_size();
  Gram stream(static_cast<std::size_t>(n), 0);
  stream.push_back(1);
  stream.push_back(1);
  std::vector<Word> flat(spec.alphabet_size);
  for (std::uint64_t m = 0; m < c.family_size; ++m) {
    decode_member(m, spec.cfg.width, flat);
    NgramHasher hasher(spec.cfg, {CharHashTable::from_values(flat, spec.cfg.width)});
    const auto hs = hash_all(hasher, stream);
    if (hs[0] == 0 && hs[1] == 0) {
      ++c.antecedent;
      if (hs[2] == 0) ++c.consequent;
    }
  }
  c.three_wise = check_trailing_zero(spec, {windows}, {}, workers);
  c.two_wise = check_trailing_zero(spec, {{windows[0], windows[1]}}, {}, workers);
  return c;
}

bool ImplicationCheck::consistent() const { return !pairwise.pass || (uniform.pass && two_universal.pass); }

ImplicationCheck check_implications(const FamilySpec& spec, const std::vector<GramTuple>& pairs, unsigned workers) {
  ImplicationCheck c;
  c.pairwise = enumerate_counts(spec, pairs, Property::pairwise(), workers);
  c.two_universal = enumerate_counts(spec, pairs, Property::two_universal(), workers);
  std::vector<GramTuple> singles;
  for (const auto& t : pairs) {
    for (const auto& g : t) {
      if (std::none_of(singles.begin(), singles.end(), [&](const GramTuple& s) { return s[0] == g; })) {
        singles.push_back({g});
      }
    }
  }
  c.uniform = enumerate_counts(spec, singles, Property::uniform(), workers);
  return c;
}

}  // namespace ngram
