#pragma once

#include <cstdint>

namespace qh {

// splitmix64; deterministic across platforms, which the seeded suites and the
// byte-identical CLI output depend on.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + (long long)below((uint64_t)(hi - lo + 1));
  }
  bool flip() { return next() & 1; }
};

}  // namespace qh
