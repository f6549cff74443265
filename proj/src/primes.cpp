#include "loctor/primes.hpp"

#include <cmath>
#include <utility>

#include "loctor/errors.hpp"

namespace loctor {

u64 powmod(u64 base, u128 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  u64 b = base % m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // Sufficient witness set for all n < 3.3 * 10^24.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> sieve(n + 1, true);
  sieve[0] = sieve[1] = false;
  for (u64 i = 2; i * i <= n; ++i) {
    if (!sieve[i]) continue;
    for (u64 j = i * i; j <= n; j += i) sieve[j] = false;
  }
  for (u64 i = 2; i <= n; ++i) {
    if (sieve[i]) out.push_back(i);
  }
  return out;
}

u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

u64 mult_order(u64 a, u64 p) {
  a %= p;
  if (a == 0) fail(errc::precondition_violated, "mult_order of 0");
  u64 n = p - 1;
  u64 order = n;
  // Divide out every prime factor of p-1 that the order does not need.
  u64 m = n;
  for (u64 q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    while (m % q == 0) m /= q;
    while (order % q == 0 && powmod(a, order / q, p) == 1) order /= q;
  }
  if (m > 1) {
    while (order % m == 0 && powmod(a, order / m, p) == 1) order /= m;
  }
  return order;
}

u64 invmod(u64 a, u64 m) {
  i128 t = 0, newt = 1;
  i128 r = static_cast<i128>(m), newr = static_cast<i128>(a % m);
  while (newr != 0) {
    i128 q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (r != 1) fail(errc::non_unit, "invmod of a non-unit");
  if (t < 0) t += static_cast<i128>(m);
  return static_cast<u64>(t);
}

}  // namespace loctor
