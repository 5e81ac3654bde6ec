// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Criterion 9 times a 4 MiB synthetic corpus, or the file named by
// NGRAMHASH_CORPUS when set.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ngramhash/bench.hpp"
#include "ngramhash/commands.hpp"
#include "ngramhash/gf2poly.hpp"
#include "ngramhash/indeptest.hpp"
#include "ngramhash/verify.hpp"

using namespace ngram;

namespace {

// Pinned limits.
constexpr double kShapeTolerance = 0.20;       // 9(b): (max - min) / min
constexpr double kThreeWiseOverCyclic = 2.0;   // 9(d)
constexpr int kBenchReps = 11;                 // 9: best of
constexpr std::size_t kCorpusBytes = 4u << 20;  // 9: >= 1 MB
constexpr std::uint64_t kRollingInstancesPerScheme = 10000;

const unsigned kWorkers = std::max(1u, std::thread::hardware_concurrency());

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

FamilySpec spec_of(Scheme s, int width, int n, std::size_t alphabet) {
  FamilySpec spec;
  spec.cfg.scheme = s;
  spec.cfg.width = width;
  spec.cfg.n = n;
  spec.alphabet_size = alphabet;
  return spec;
}

// True iff every dense cell of every tuple holds exactly `target`.
bool all_cells_equal(const IndependenceReport& r, std::uint64_t target) {
  for (const auto& row : r.counts) {
    if (row.empty()) return false;
    for (auto c : row) {
      if (c != target) return false;
    }
  }
  return !r.counts.empty();
}

Outcome general_pairwise() {
  Outcome o;
  const std::pair<int, const char*> cases[] = {{2, "x^2+x+1"}, {3, "x^3+x+1"}};
  for (auto [width, poly] : cases) {
    auto spec = spec_of(Scheme::General, width, 2, 2);
    spec.cfg.poly = parse_poly(poly);
    const auto r = enumerate_counts(spec, default_tuples(spec, 2), Property::pairwise(), kWorkers);
    const auto target = r.family_size >> (2 * width);
    const bool ok = r.pass && all_cells_equal(r, target) && r.tuples.size() == 6;
    o.require(ok, std::string("L=") + std::to_string(width) + " cells");
    o.note("L=" + std::to_string(width) + ": " + std::to_string(r.tuples.size()) + " pairs x " +
           std::to_string(r.counts[0].size()) + " cells = " + std::to_string(target));
  }
  return o;
}

Outcome cyclic_nonuniform() {
  Outcome o;
  const auto spec = spec_of(Scheme::Cyclic, 3, 2, 1);
  const auto r = enumerate_counts(spec, {{gram_from_string("aa")}}, Property::uniform(), kWorkers);
  const Word zero[] = {0};
  const auto c = r.count(0, zero);
  o.require(r.family_size == 8 && c == 2, "count(h(aa)=0) = 2 of 8");
  o.require(!r.pass, "uniformity rejected");
  o.note("count(h(aa)=0) = " + std::to_string(c) + " of " + std::to_string(r.family_size));
  return o;
}

Outcome truncated_pairwise() {
  Outcome o;
  for (int width : {3, 4}) {
    for (int off = 0; off < width; ++off) {
      auto spec = spec_of(Scheme::TruncatedCyclic, width, 2, 2);
      spec.cfg.drop_offset = off;
      const auto r = enumerate_counts(spec, default_tuples(spec, 2), Property::pairwise(), kWorkers);
      const auto out = width - 1;
      const bool ok = r.pass && all_cells_equal(r, 4) && r.family_size >> (2 * out) == 4;
      o.require(ok, "L=" + std::to_string(width) + " drop_offset=" + std::to_string(off));
    }
  }
  if (o.pass) o.note("every cell = 4 at L=3 (offsets 0..2) and L=4 (offsets 0..3)");
  return o;
}

Outcome karp_rabin_matrix() {
  Outcome o;
  const int ns[] = {2, 3};
  const Word bases[] = {2, 3};
  const auto verdicts = check_karp_rabin_matrix(3, ns, bases, 2, kWorkers);
  std::map<std::pair<Word, int>, const KarpRabinVerdict*> by;
  for (const auto& v : verdicts) by[{v.base, v.n}] = &v;
  struct Row {
    Word base;
    int n;
    bool uniform;
  };
  for (auto row : {Row{3, 2, false}, Row{2, 2, true}, Row{3, 3, true}}) {
    const auto* v = by.at({row.base, row.n});
    const std::string tag = "B=" + std::to_string(row.base) + " n=" + std::to_string(row.n);
    o.require(v->uniform.pass == row.uniform, tag + " uniform");
    o.require(v->pairwise && !v->pairwise->pass, tag + " pairwise");
    o.note(tag + ": uniform " + (v->uniform.pass ? "passes" : "fails") + ", pairwise fails");
  }
  return o;
}

Outcome threewise() {
  Outcome o;
  const auto v = check_threewise(2, 2, 2, kWorkers);
  o.require(v.three_wise.pass && all_cells_equal(v.three_wise, v.three_wise.family_size >> 6), "3-wise exact");
  o.require(v.four_wise && !v.four_wise->pass, "4-wise rejected");
  o.require(v.four_wise && tuple_to_string(v.four_wise->tuples.at(0)) == "(aa,ab,ba,bb)", "4-wise quadruple");
  o.require(v.xor_zero_members == 256 && v.three_wise.family_size == 256, "xor zero for all 256 members");
  o.note("3-wise exact on " + std::to_string(v.three_wise.tuples.size()) + " triples; xor zero for " +
         std::to_string(v.xor_zero_members) + " of 256 members");
  return o;
}

// The 2-wise trailing-zero target on (aa, ab) is exact for the uniform
// families; Cyclic and odd-multiplier Karp-Rabin are not uniform at even n,
// so there it must miss.
Outcome collapse() {
  Outcome o;
  struct Case {
    const char* name;
    FamilySpec spec;
    bool two_wise_exact;
  };
  std::vector<Case> cases;
  cases.push_back({"cyclic", spec_of(Scheme::Cyclic, 3, 2, 2), false});
  cases.push_back({"general", spec_of(Scheme::General, 3, 2, 2), true});
  auto kr37 = spec_of(Scheme::KarpRabin, 3, 2, 2);
  kr37.cfg.base = 37;
  cases.push_back({"karprabin B=37", kr37, false});
  auto kr2 = spec_of(Scheme::KarpRabin, 3, 2, 2);
  kr2.cfg.base = 2;
  cases.push_back({"karprabin B=2", kr2, true});
  for (const auto& c : cases) {
    const auto r = check_recursive_collapse(c.spec, kWorkers);
    o.require(r.family_size == 64 && r.antecedent > 0 && r.collapse_holds(), std::string(c.name) + " collapse");
    o.require(!r.three_wise.pass, std::string(c.name) + " 3-wise rejected");
    o.require(r.two_wise.pass == c.two_wise_exact, std::string(c.name) + " 2-wise");
    o.note(std::string(c.name) + ": " + std::to_string(r.consequent) + "/" + std::to_string(r.antecedent) +
           " collapse, 3-wise fails, 2-wise " + (r.two_wise.pass ? "exact" : "off target"));
  }
  return o;
}

Outcome rolling_equivalence() {
  Outcome o;
  const auto s = check_rolling_equivalence(6 * kRollingInstancesPerScheme, 1);
  o.require(s.ok(), "rolled == closed form and General == RAM-buffered");
  o.note(std::to_string(s.instances) + " instances, " + std::to_string(s.windows) + " windows, " +
         std::to_string(s.mismatches) + " mismatches; " + std::to_string(s.ram_windows) + " RAM windows, " +
         std::to_string(s.ram_mismatches) + " mismatches");
  return o;
}

Outcome irreducibility() {
  Outcome o;
  for (const char* p : {"x^10+x^3+1", "x^15+x+1", "x^20+x^3+1", "x^25+x^3+1", "x^30+x^6+x^4+x+1",
                        "x^19+x^5+x^2+x+1"}) {
    o.require(is_irreducible(parse_poly(p)), std::string(p) + " irreducible");
  }
  for (int width = 2; width <= 20; ++width) {
    const GF2Poly cyclic{(Word{1} << width) | 1};
    o.require(!is_irreducible(cyclic), "x^" + std::to_string(width) + "+1 reducible");
  }
  if (o.pass) o.note("6 irreducible, x^L+1 reducible for L=2..20");
  return o;
}

Outcome benchmark_shape() {
  Outcome o;
  std::vector<unsigned char> corpus;
  std::string source;
  if (const char* path = std::getenv("NGRAMHASH_CORPUS")) {
    corpus = read_input(path);
    source = path;
  } else {
    corpus = synthetic_corpus(kCorpusBytes);
    source = "synthetic";
  }
  o.require(corpus.size() >= 1000000, "corpus >= 1 MB");
  const int ns[] = {1, 2, 5, 10, 25};
  const Scheme schemes[] = {Scheme::ThreeWise, Scheme::Cyclic, Scheme::KarpRabin, Scheme::General};
  std::vector<HasherConfig> cfgs;
  for (auto s : schemes) {
    for (int n : ns) cfgs.push_back(bench_config(s, n));
  }
  const auto results = run_bench_suite(cfgs, corpus, kBenchReps);
  std::map<std::pair<Scheme, int>, double> t;
  for (const auto& r : results) t[{r.scheme, r.n}] = r.ns_per_gram();

  bool increasing = true;
  for (std::size_t i = 1; i < std::size(ns); ++i) increasing &= t[{Scheme::ThreeWise, ns[i]}] > t[{Scheme::ThreeWise, ns[i - 1]}];
  o.require(increasing, "(a) ThreeWise strictly increasing in n");

  const auto spread = [&](Scheme s) {
    double lo = 1e300, hi = 0;
    for (int n : ns) {
      lo = std::min(lo, t[{s, n}]);
      hi = std::max(hi, t[{s, n}]);
    }
    return (hi - lo) / lo;
  };
  o.require(spread(Scheme::Cyclic) < kShapeTolerance, "(b) Cyclic flat in n");
  o.require(spread(Scheme::KarpRabin) < kShapeTolerance, "(b) KarpRabin flat in n");
  o.require(t[{Scheme::Cyclic, 25}] <= t[{Scheme::General, 25}], "(c) Cyclic <= General at n=25");
  const double ratio = t[{Scheme::ThreeWise, 5}] / t[{Scheme::Cyclic, 5}];
  o.require(ratio >= kThreeWiseOverCyclic, "(d) ThreeWise(5) >= 2x Cyclic(5)");

  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%s corpus %zu bytes, best of %d; ns/gram threewise %.2f %.2f %.2f %.2f %.2f; cyclic spread %.1f%%; "
                "karprabin spread %.1f%%; cyclic(25) %.2f vs general(25) %.2f; threewise(5)/cyclic(5) = %.2f",
                source.c_str(), corpus.size(), kBenchReps, t[{Scheme::ThreeWise, 1}], t[{Scheme::ThreeWise, 2}],
                t[{Scheme::ThreeWise, 5}], t[{Scheme::ThreeWise, 10}], t[{Scheme::ThreeWise, 25}],
                100 * spread(Scheme::Cyclic), 100 * spread(Scheme::KarpRabin), t[{Scheme::Cyclic, 25}],
                t[{Scheme::General, 25}], ratio);
  o.note(buf);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "general pairwise independence", 10, general_pairwise},
      {2, "cyclic non-uniformity", 1, cyclic_nonuniform},
      {3, "truncated cyclic pairwise independence", 30, truncated_pairwise},
      {4, "karp-rabin uniformity matrix", 10, karp_rabin_matrix},
      {5, "threewise 3-wise, not 4-wise", 5, threewise},
      {6, "recursive trailing-zero collapse", 5, collapse},
      {7, "rolling equivalence", 60, rolling_equivalence},
      {8, "irreducibility fixtures", 5, irreducibility},
      {9, "benchmark shape", 120, benchmark_shape},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) o.require(false, "time limit " + std::to_string(c.limit_seconds) + " s");
    failed += !o.pass;
    std::printf("%s  %d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
