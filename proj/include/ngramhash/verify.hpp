#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ngramhash/config.hpp"

namespace ngram {

/// Names accepted by run_suite, besides "all".
const std::vector<std::string>& suite_names();

/// Runs one verification suite (or "all"), writing each check and its report
/// to `out`. Returns true iff every verdict matches its prediction. Throws
/// std::invalid_argument for an unknown suite.
bool run_suite(std::string_view name, std::ostream& out, unsigned workers = 1);

/// A valid random configuration with L <= max_width and n <= max_n (General
/// variants get a random irreducible polynomial of degree L).
HasherConfig random_small_config(std::mt19937_64& rng, Scheme scheme, int max_width = 16, int max_n = 8);

struct RollingEquivalenceStats {
  std::uint64_t instances = 0;
  std::uint64_t windows = 0;
  std::uint64_t mismatches = 0;      // rolled value != closed form
  std::uint64_t ram_windows = 0;
  std::uint64_t ram_mismatches = 0;  // General != RamBufferedGeneral

  bool ok() const { return mismatches == 0 && ram_mismatches == 0 && windows > 0 && ram_windows > 0; }
};

/// Random (config, stream) instances cycling through every scheme, with
/// streams of up to 256 symbols. Each General instance is also run as
/// RamBufferedGeneral with K = 1 and, for even n, K = 2.
RollingEquivalenceStats check_rolling_equivalence(std::uint64_t instances, std::uint64_t seed = 1);

}  // namespace ngram
