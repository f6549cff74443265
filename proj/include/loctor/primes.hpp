#pragma once

#include <cstdint>
#include <vector>

namespace loctor {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;  // a, b < m; wraparound detected via s < a
  if (s < a || s >= m) s -= m;
  return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

u64 powmod(u64 base, u128 e, u64 m);

/* Deterministic Miller-Rabin, valid for all 64-bit inputs. */
bool is_prime(u64 n);

std::vector<u64> primes_up_to(u64 n);

/* floor(sqrt(n)) computed exactly. */
u64 isqrt(u64 n);

/* Multiplicative order of a modulo prime p; a must not be 0 mod p. */
u64 mult_order(u64 a, u64 p);

/* Modular inverse for unit a modulo m (m need not be prime). */
u64 invmod(u64 a, u64 m);

}  // namespace loctor
