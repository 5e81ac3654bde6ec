#include "ngramhash/verify.hpp"

#include <ostream>
#include <stdexcept>

#include "ngramhash/indeptest.hpp"
#include "ngramhash/rolling.hpp"

namespace ngram {

namespace {

bool check(std::ostream& out, bool ok, const std::string& what) {
  out << (ok ? "PASS  " : "FAIL  ") << what << "\n";
  return ok;
}

void dump(std::ostream& out, const IndependenceReport& r) {
  std::string text = r.to_text();
  std::string indented;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    indented += "    " + text.substr(start, end - start) + "\n";
    start = end + 1;
  }
  out << indented;
}

FamilySpec family(Scheme s, int width, int n, std::size_t alphabet) {
  FamilySpec spec;
  spec.cfg.scheme = s;
  spec.cfg.width = width;
  spec.cfg.n = n;
  spec.alphabet_size = alphabet;
  return spec;
}

std::vector<GramTuple> single_grams(const FamilySpec& spec) {
  std::vector<GramTuple> out;
  for (auto& g : all_grams(spec.cfg.n, spec.alphabet_size)) out.push_back({g});
  return out;
}

bool general_pairwise(std::ostream& out, unsigned workers) {
  bool ok = true;
  for (auto [width, poly] : {std::pair{2, Word{0b111}}, std::pair{3, Word{0b1011}}}) {
    auto spec = family(Scheme::General, width, 2, 2);
    spec.cfg.poly = GF2Poly{poly};
    const auto r = enumerate_counts(spec, default_tuples(spec, 2), Property::pairwise(), workers);
    ok &= check(out, r.pass && r.rows_sum_to_family_size(),
                "general L=" + std::to_string(width) + " p=" + to_monomial_string(GF2Poly{poly}) +
                    " n=2: every (y,z) cell = " + std::to_string(r.family_size >> (2 * width)));
    dump(out, r);
  }
  return ok;
}

bool cyclic_nonuniform(std::ostream& out, unsigned workers) {
  const auto spec = family(Scheme::Cyclic, 3, 2, 1);
  const auto r = enumerate_counts(spec, single_grams(spec), Property::uniform(), workers);
  const Word zero[] = {0};
  const bool ok = check(out, !r.pass && r.count(0, zero) == 2 && r.family_size == 8,
                        "cyclic L=3 n=2: h(aa)=0 for 2 of 8 tables (uniform would be 1)");
  dump(out, r);
  return ok;
}

bool truncated_pairwise(std::ostream& out, unsigned workers) {
  bool ok = true;
  for (int width : {3, 4}) {
    for (int drop = 0; drop < width; ++drop) {
      auto spec = family(Scheme::TruncatedCyclic, width, 2, 2);
      spec.cfg.drop_offset = drop;
      const auto r = enumerate_counts(spec, default_tuples(spec, 2), Property::pairwise(), workers);
      ok &= check(out, r.pass,
                  "truncated cyclic L=" + std::to_string(width) + " n=2 drop_offset=" + std::to_string(drop) +
                      ": pairwise on " + std::to_string(r.output_width) + " bits, every cell = " +
                      std::to_string(r.family_size >> (2 * r.output_width)));
      if (!r.pass) dump(out, r);
    }
  }
  return ok;
}

bool karp_rabin_matrix(std::ostream& out, unsigned workers) {
  bool ok = true;
  const int ns[] = {1, 2, 3};
  const Word bases[] = {2, 3, 37};
  for (const auto& v : check_karp_rabin_matrix(3, ns, bases, 2, workers)) {
    ok &= check(out, v.matches(),
                "karp-rabin L=3 B=" + std::to_string(v.base) + " n=" + std::to_string(v.n) +
                    ": uniform " + (v.uniform.pass ? "passes" : "fails") + " (predicted " +
                    (v.predicted_uniform ? "pass" : "fail") + "), pairwise " + (v.pairwise->pass ? "passes" : "fails"));
  }
  const int two[] = {2};
  const Word three[] = {3};
  const auto single = check_karp_rabin_matrix(3, two, three, 1, workers);
  ok &= check(out, single[0].matches() && !single[0].uniform.pass,
              "karp-rabin L=3 B=3 n=2 one symbol: uniform fails");
  dump(out, single[0].uniform);
  return ok;
}

bool threewise(std::ostream& out, unsigned workers) {
  const auto v = check_threewise(2, 2, 2, workers);
  bool ok = check(out, v.three_wise.pass, "threewise L=2 n=2: 3-wise independent on all distinct triples");
  dump(out, v.three_wise);
  ok &= check(out, v.four_wise && !v.four_wise->pass, "threewise L=2 n=2: not 4-wise on (aa,ab,ba,bb)");
  if (v.four_wise) dump(out, *v.four_wise);
  ok &= check(out, v.xor_zero_members == v.three_wise.family_size,
              "threewise: h(aa)^h(ab)^h(ba)^h(bb) = 0 for " + std::to_string(v.xor_zero_members) + " of " +
                  std::to_string(v.three_wise.family_size) + " members");
  const auto v1 = check_threewise(2, 1, 3, workers);
  ok &= check(out, v1.matches(), "threewise L=2 n=1 three symbols: 3-wise independent");
  return ok;
}

bool trailing_zero(std::ostream& out, unsigned workers) {
  bool ok = true;
  {
    const auto spec = family(Scheme::General, 2, 2, 2);
    const auto r = check_trailing_zero(spec, default_tuples(spec, 2), {}, workers);
    ok &= check(out, r.pass, "general L=2 n=2: 2-wise trailing-zero independent");
  }
  struct Case {
    Scheme scheme;
    Word base;
    bool two_wise_expected;  // false where the family is not even uniform
  };
  for (const Case& c : {Case{Scheme::Cyclic, 37, false}, Case{Scheme::General, 37, true},
                        Case{Scheme::KarpRabin, 37, false}, Case{Scheme::KarpRabin, 2, true}}) {
    auto spec = family(c.scheme, 3, 2, 2);
    spec.cfg.base = c.base;
    const auto col = check_recursive_collapse(spec, workers);
    std::string name(scheme_name(c.scheme));
    if (c.scheme == Scheme::KarpRabin) name += " B=" + std::to_string(c.base);
    ok &= check(out, col.collapse_holds() && col.antecedent > 0,
                name + " L=3 n=2: h(aa)=h(ab)=0 forces h(bb)=0 (" + std::to_string(col.antecedent) + " of " +
                    std::to_string(col.family_size) + " tables)");
    ok &= check(out, !col.three_wise.pass, name + ": 3-wise trailing-zero fails on (aa,ab,bb)");
    ok &= check(out, col.two_wise.pass == c.two_wise_expected,
                name + ": 2-wise trailing-zero on (aa,ab) " + (col.two_wise.pass ? "matches" : "misses") +
                    " its target (" + (c.two_wise_expected ? "expected" : "not uniform for even n") + ")");
  }
  {
    auto spec = family(Scheme::General, 3, 2, 2);
    spec.lowest_bit_only = true;
    const auto tz = check_trailing_zero(spec, default_tuples(spec, 2), {}, workers);
    const auto u = enumerate_counts(spec, single_grams(spec), Property::uniform(), workers);
    const Word g1[] = {1}, g4[] = {4};
    bool ratio = true;
    for (std::size_t t = 0; t < u.tuples.size(); ++t) ratio &= u.count(t, g1) == 4 * u.count(t, g4);
    ok &= check(out, tz.pass && !u.pass && ratio,
                "lowest-bit transform of general L=3: trailing-zero 2-wise passes, uniform fails, "
                "count(g=001) = 4 count(g=100)");
  }
  return ok;
}

bool rolling_equivalence(std::ostream& out, unsigned) {
  const auto s = check_rolling_equivalence(10000);
  return check(out, s.ok(),
               std::to_string(s.instances) + " random instances: " + std::to_string(s.windows) +
                   " rolled windows equal the closed form (" + std::to_string(s.mismatches) + " mismatches), " +
                   std::to_string(s.ram_windows) + " RAM-buffered windows equal General (" +
                   std::to_string(s.ram_mismatches) + " mismatches)");
}

using SuiteFn = bool (*)(std::ostream&, unsigned);

struct Suite {
  const char* name;
  SuiteFn fn;
};

constexpr Suite kSuites[] = {
    {"general-pairwise", general_pairwise},
    {"cyclic-nonuniform", cyclic_nonuniform},
    {"truncated-cyclic-pairwise", truncated_pairwise},
    {"karp-rabin-matrix", karp_rabin_matrix},
    {"threewise", threewise},
    {"trailing-zero", trailing_zero},
    {"rolling-equivalence", rolling_equivalence},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSuites) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

bool run_suite(std::string_view name, std::ostream& out, unsigned workers) {
  bool ok = true;
  bool found = false;
  for (const auto& s : kSuites) {
    if (name != "all" && name != s.name) continue;
    found = true;
    out << "== " << s.name << "\n";
    ok &= s.fn(out, workers);
  }
  if (!found) throw std::invalid_argument("unknown suite: " + std::string(name));
  return ok;
}

HasherConfig random_small_config(std::mt19937_64& rng, Scheme scheme, int max_width, int max_n) {
  HasherConfig cfg;
  cfg.scheme = scheme;
  cfg.n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_n));
  const bool needs_l_ge_n = scheme != Scheme::ThreeWise && scheme != Scheme::KarpRabin;
  if (needs_l_ge_n && cfg.n > max_width) cfg.n = max_width;
  const int min_width = needs_l_ge_n ? cfg.n : 1;
  cfg.width = min_width + static_cast<int>(rng() % static_cast<unsigned>(max_width + 1 - min_width));
  cfg.seed = rng();
  cfg.base = rng() % 4 == 0 ? 37 : rng() % 1000;
  if (scheme == Scheme::General || scheme == Scheme::RamBufferedGeneral) {
    for (;;) {
      const GF2Poly p{(Word{1} << cfg.width) | (rng() & low_mask(cfg.width))};
      if (is_irreducible(p)) {
        cfg.poly = p;
        break;
      }
    }
  }
  if (scheme == Scheme::RamBufferedGeneral) cfg.k_split = (cfg.n % 2 == 0 && rng() % 2) ? 2 : 1;
  if (scheme == Scheme::TruncatedCyclic) cfg.drop_offset = static_cast<int>(rng() % static_cast<unsigned>(cfg.width));
  cfg.validate();
  return cfg;
}

RollingEquivalenceStats check_rolling_equivalence(std::uint64_t instances, std::uint64_t seed) {
  constexpr Scheme kSchemes[] = {Scheme::ThreeWise, Scheme::KarpRabin, Scheme::General, Scheme::RamBufferedGeneral,
                                 Scheme::Cyclic, Scheme::TruncatedCyclic};
  std::mt19937_64 rng(seed);
  RollingEquivalenceStats s;
  for (std::uint64_t i = 0; i < instances; ++i) {
    const auto cfg = random_small_config(rng, kSchemes[i % 6]);
    const std::size_t alphabet = 1 + rng() % 8;
    std::vector<Symbol> stream(rng() % 257);
    for (auto& c : stream) c = static_cast<Symbol>(rng() % alphabet);

    NgramHasher hasher(cfg, alphabet);
    const auto rolled = hash_all(hasher, stream);
    const GramHasher closed(cfg);
    std::vector<Word> flat;
    for (const auto& t : hasher.tables()) flat.insert(flat.end(), t.values().begin(), t.values().end());
    for (std::size_t w = 0; w < rolled.size(); ++w) {
      ++s.windows;
      const std::span<const Symbol> window(stream.data() + w, static_cast<std::size_t>(cfg.n));
      if (rolled[w] != closed(flat, alphabet, window)) ++s.mismatches;
    }
    if (cfg.scheme == Scheme::General) {
      for (int k : {1, 2}) {
        if (cfg.n % k != 0) continue;
        HasherConfig ram = cfg;
        ram.scheme = Scheme::RamBufferedGeneral;
        ram.k_split = k;
        NgramHasher r(ram, {hasher.tables().begin(), hasher.tables().end()});
        const auto values = hash_all(r, stream);
        s.ram_windows += values.size();
        if (values != rolled) ++s.ram_mismatches;
      }
    }
    ++s.instances;
  }
  return s;
}

}  // namespace ngram
