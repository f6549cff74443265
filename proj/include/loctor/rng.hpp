#pragma once

#include "loctor/primes.hpp"

namespace loctor {

/* splitmix64.  Small, fully deterministic across platforms; every
 * randomized routine in the library derives its stream from the inputs it
 * was called with, so repeated runs give identical results. */
struct rng64 {
  u64 state;

  explicit rng64(u64 seed) : state(seed) {}

  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  u64 below(u64 n) { return next() % n; }  // n > 0; bias is irrelevant here
};

inline u64 seed_from(u64 a, u64 b, u64 c, u64 d) {
  u64 h = 0x9e3779b97f4a7c15ULL;
  for (u64 v : {a, b, c, d}) {
    rng64 g(h ^ v);
    h = g.next();
  }
  return h;
}

}  // namespace loctor
