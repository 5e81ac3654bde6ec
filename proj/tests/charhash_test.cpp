#include "doctest.h"
#include "ngramhash/charhash.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

using namespace ngram;

TEST_CASE("random tables are deterministic in (seed, L, alphabet)") {
  const auto a = CharHashTable::random(8, 256, 42);
  const auto b = CharHashTable::random(8, 256, 42);
  CHECK(a == b);
  CHECK(a.seed() == 42);
  CHECK(a != CharHashTable::random(8, 256, 43));
  // Stable across repeated lookups.
  for (Symbol c = 0; c < 256; ++c) CHECK(a.lookup(c) == a.lookup(c));
}

TEST_CASE("entries respect the width") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto t = CharHashTable::random(3, 2, seed);
    CHECK(t.lookup(0) < 8);
    CHECK(t.lookup(1) < 8);
  }
  const auto wide = CharHashTable::random(63, 256, 1);
  for (Word v : wide.values()) CHECK(v <= low_mask(63));
  CHECK_THROWS_AS(CharHashTable::random(0, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(CharHashTable::random(64, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(CharHashTable::random(4, 0, 1), std::invalid_argument);
}

TEST_CASE("entry distribution passes chi-square at alpha = 0.001") {
  // 10^4 tables at L = 4 over a 16-symbol alphabet; 15 degrees of freedom.
  constexpr double kCritical = 37.69729821835383;  // chi2.ppf(0.999, 15)
  std::array<double, 16> bins{};
  double total = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const auto table = CharHashTable::random(4, 16, seed);
    for (Word v : table.values()) {
      bins[v] += 1;
      total += 1;
    }
  }
  const double expected = total / 16;
  double stat = 0;
  for (double b : bins) stat += (b - expected) * (b - expected) / expected;
  CHECK(stat < kCritical);
}

TEST_CASE("lookup bounds") {
  const auto t = CharHashTable::from_values({5, 1}, 3);
  CHECK(t.lookup(0) == 5);
  CHECK(t[1] == 1);
  CHECK_THROWS_AS(t.lookup(2), std::out_of_range);
}

TEST_CASE("explicit tables") {
  const auto t = CharHashTable::from_values({1, 2}, 3);
  CHECK(t.lookup(0) == 1);
  CHECK(t.lookup(1) == 2);
  CHECK(t.alphabet_size() == 2);
  CHECK_THROWS_AS(CharHashTable::from_values({8}, 3), std::invalid_argument);
  CHECK_THROWS_AS(CharHashTable::from_values({}, 3), std::invalid_argument);
}

TEST_CASE("dump and load") {
  const auto t = CharHashTable::random(19, 256, 99);
  std::stringstream ss;
  t.save(ss);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "19 256 99");
  ss.seekg(0);
  CHECK(CharHashTable::load(ss) == t);

  std::istringstream short_file("3 2 0\n1\n");
  CHECK_THROWS_AS(CharHashTable::load(short_file), std::runtime_error);
  std::istringstream too_wide("3 1 0\n8\n");
  CHECK_THROWS_AS(CharHashTable::load(too_wide), std::invalid_argument);
}

TEST_CASE("random_tables seeds each table separately") {
  const auto ts = random_tables(8, 4, 10, 3);
  REQUIRE(ts.size() == 3);
  CHECK(ts[0] == CharHashTable::random(8, 4, 10));
  CHECK(ts[2] == CharHashTable::random(8, 4, 12));
}
