#include "ngramhash/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "ngramhash/rolling.hpp"

namespace ngram {

double BenchResult::ns_per_gram() const {
  return grams() == 0 ? 0.0 : static_cast<double>(elapsed_ns) / static_cast<double>(grams());
}

double BenchResult::bytes_per_second() const {
  return elapsed_ns == 0 ? 0.0 : static_cast<double>(input_bytes) * 1e9 / static_cast<double>(elapsed_ns);
}

HasherConfig bench_config(Scheme scheme, int n, int output_width, std::uint64_t seed) {
  HasherConfig cfg;
  cfg.scheme = scheme;
  cfg.n = n;
  cfg.seed = seed;
  cfg.width = output_width;
  switch (scheme) {
    case Scheme::ThreeWise:
    case Scheme::KarpRabin:
      break;
    case Scheme::General:
    case Scheme::Cyclic:
      cfg.width = std::max(output_width, n);
      break;
    case Scheme::RamBufferedGeneral:
      cfg.width = std::max(output_width, n);
      cfg.k_split = 1;
      while (n % cfg.k_split != 0 || n / cfg.k_split > 16) ++cfg.k_split;
      break;
    case Scheme::TruncatedCyclic:
      cfg.width = output_width + n - 1;
      break;
  }
  cfg.validate();
  return cfg;
}

namespace {

Word timed_pass(NgramHasher& hasher, std::span<const unsigned char> input, std::uint64_t& ns) {
  const auto t0 = std::chrono::steady_clock::now();
  hasher.reset();
  const Word sum = hasher.visit([&](auto& roller) {
    // Kept local so byte loads from the input cannot alias it.
    Word acc = 0;
    roller.eat_all(input, [&acc](Word v) { acc ^= v; });
    return acc;
  });
  const auto t1 = std::chrono::steady_clock::now();
  ns = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
  return sum;
}

}  // namespace

std::vector<BenchResult> run_bench_suite(std::span<const HasherConfig> cfgs, std::span<const unsigned char> input,
                                         int reps) {
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  std::vector<NgramHasher> hashers;
  std::vector<BenchResult> results;
  for (const auto& cfg : cfgs) {
    hashers.emplace_back(cfg, kByteAlphabet);
    BenchResult r;
    r.scheme = cfg.scheme;
    r.n = cfg.n;
    r.width = cfg.width;
    r.input_bytes = input.size();
    r.elapsed_ns = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t ns = 0;
    r.checksum = timed_pass(hashers.back(), input, ns);  // warm-up
    results.push_back(r);
  }
  for (int round = 0; round < reps; ++round) {
    for (std::size_t i = 0; i < hashers.size(); ++i) {
      std::uint64_t ns = 0;
      if (timed_pass(hashers[i], input, ns) != results[i].checksum) {
        throw std::logic_error("checksum changed between repetitions");
      }
      results[i].elapsed_ns = std::min(results[i].elapsed_ns, ns);
    }
  }
  return results;
}

BenchResult run_bench(const HasherConfig& cfg, std::span<const unsigned char> input, int reps) {
  return run_bench_suite(std::span(&cfg, 1), input, reps).front();
}

std::string to_csv_row(const BenchResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%d,%d,%llu,%llu,%.4f,%llx", std::string(scheme_name(r.scheme)).c_str(), r.n, r.width,
                static_cast<unsigned long long>(r.input_bytes), static_cast<unsigned long long>(r.elapsed_ns),
                r.ns_per_gram(), static_cast<unsigned long long>(r.checksum));
  return buf;
}

std::string to_human(const BenchResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-12s n=%-3d L=%-3d %8.3f ms  %7.3f ns/gram  %8.1f MB/s  checksum %llx",
                std::string(scheme_name(r.scheme)).c_str(), r.n, r.width, static_cast<double>(r.elapsed_ns) / 1e6, r.ns_per_gram(),
                r.bytes_per_second() / 1e6, static_cast<unsigned long long>(r.checksum));
  return buf;
}

std::vector<unsigned char> synthetic_corpus(std::size_t bytes, std::uint64_t seed) {
  static constexpr const char* kWords[] = {
      "the",   "and",   "of",     "to",   "that",  "in",     "he",     "shall", "unto",  "for",   "i",
      "his",   "a",     "lord",   "they", "be",    "is",     "him",    "not",   "them",  "it",    "with",
      "all",   "thou",  "thy",    "was",  "god",   "which",  "my",     "me",    "said",  "but",   "ye",
      "their", "have",  "will",   "thee", "from",  "as",     "are",    "when",  "this",  "out",   "were",
      "upon",  "man",   "by",     "you",  "israel", "king",  "son",    "up",    "there", "hath",  "then",
      "people", "came", "had",    "house", "into", "on",     "her",    "come",  "one",   "we",    "children",
      "s",     "before", "your",  "also", "day",   "land",   "men",    "shalt", "let",   "go",    "so",
      "hand",  "even",  "saying", "did",  "no",    "because", "hast",  "made",  "cast",  "behold", "earth",
      "over",  "great", "name",   "may",  "things", "water", "light",  "night", "city",  "word",  "heaven",
  };
  constexpr std::size_t kVocab = sizeof kWords / sizeof kWords[0];
  std::mt19937_64 rng(seed);
  // Zipf weights 1/(rank+1).
  std::vector<double> weights(kVocab);
  for (std::size_t i = 0; i < kVocab; ++i) weights[i] = 1.0 / static_cast<double>(i + 1);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());

  std::vector<unsigned char> out;
  out.reserve(bytes + 16);
  std::size_t line = 0;
  while (out.size() < bytes) {
    const char* w = kWords[pick(rng)];
    for (const char* p = w; *p; ++p) out.push_back(static_cast<unsigned char>(*p));
    line += std::char_traits<char>::length(w) + 1;
    if (line > 70) {
      out.push_back('\n');
      line = 0;
    } else {
      out.push_back(' ');
    }
  }
  out.resize(bytes);
  return out;
}

}  // namespace ngram
