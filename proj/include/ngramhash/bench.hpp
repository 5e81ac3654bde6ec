#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ngramhash/config.hpp"
#include "ngramhash/gf2poly.hpp"

namespace ngram {

inline constexpr int kDefaultBenchWidth = 19;
inline constexpr int kDefaultBenchReps = 5;

struct BenchResult {
  Scheme scheme = Scheme::Cyclic;
  int n = 0;
  int width = 0;  // L actually used by the hasher
  std::uint64_t input_bytes = 0;
  std::uint64_t elapsed_ns = 0;  // best of the repetitions
  Word checksum = 0;             // XOR of all hashes

  std::uint64_t grams() const { return input_bytes + 1 > static_cast<std::uint64_t>(n) ? input_bytes - n + 1 : 0; }
  double ns_per_gram() const;
  double bytes_per_second() const;
};

/// Benchmark configuration producing `output_width`-bit hashes.
/// General and RamBufferedGeneral need L >= n, so they widen to max(W, n);
/// Cyclic also runs at max(W, n); TruncatedCyclic runs at W + n - 1 so its
/// output keeps W bits. RamBufferedGeneral splits the shift table into the
/// fewest parts of at most 2^16 entries each.
HasherConfig bench_config(Scheme scheme, int n, int output_width = kDefaultBenchWidth, std::uint64_t seed = 0);

/// One warm-up pass per configuration, then `reps` rounds that each time one
/// pass of every configuration in turn; each result keeps its best pass.
/// Interleaving spreads machine noise evenly. Single-threaded. Throws
/// std::logic_error if a checksum differs between passes.
std::vector<BenchResult> run_bench_suite(std::span<const HasherConfig> cfgs, std::span<const unsigned char> input,
                                         int reps = kDefaultBenchReps);

BenchResult run_bench(const HasherConfig& cfg, std::span<const unsigned char> input, int reps = kDefaultBenchReps);

inline constexpr const char* kBenchCsvHeader = "scheme,n,L,bytes,ns,ns_per_gram,checksum";
std::string to_csv_row(const BenchResult& r);
std::string to_human(const BenchResult& r);

/// Deterministic printable text of `bytes` bytes: words from a fixed
/// vocabulary with Zipf-like frequencies, separated by spaces and newlines.
std::vector<unsigned char> synthetic_corpus(std::size_t bytes, std::uint64_t seed = 1);

}  // namespace ngram
