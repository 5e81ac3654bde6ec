#pragma once

// Test-only reference implementations. They deliberately avoid the library's
// code paths: plain carry-less products followed by long division, and trial
// division for irreducibility.

#include <cstdint>
#include <random>

namespace oracle {

using u64 = std::uint64_t;

inline int deg(u64 a) {
  int d = -1;
  while (a) {
    ++d;
    a >>= 1;
  }
  return d;
}

/// Carry-less product; operands below 2^32.
inline u64 clmul(u64 a, u64 b) {
  u64 r = 0;
  for (int i = 0; i < 32; ++i) {
    if ((b >> i) & 1) r ^= a << i;
  }
  return r;
}

/// Remainder of a by m in GF(2)[x], by schoolbook long division.
inline u64 reduce(u64 a, u64 m) {
  const int dm = deg(m);
  for (int i = 63; i >= dm; --i) {
    if ((a >> i) & 1) a ^= m << (i - dm);
  }
  return a;
}

inline u64 mul_mod(u64 a, u64 b, u64 m) { return reduce(clmul(a, b), m); }

inline u64 x_pow_mod(unsigned e, u64 m) {
  u64 r = reduce(1, m);
  for (unsigned i = 0; i < e; ++i) r = reduce(r << 1, m);
  return r;
}

inline bool irreducible_by_trial_division(u64 p) {
  const int d = deg(p);
  for (u64 q = 2; deg(q) <= d / 2; ++q) {
    if (reduce(p, q) == 0) return false;
  }
  return true;
}

}  // namespace oracle
