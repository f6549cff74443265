#include "doctest.h"

#include <vector>

#include "loctor/primes.hpp"

using namespace loctor;

TEST_SUITE("primes") {

TEST_CASE("primality for small and structured inputs") {
  // Oracle: trial division.
  auto slow = [](u64 n) {
    if (n < 2) return false;
    for (u64 f = 2; f * f <= n; ++f)
      if (n % f == 0) return false;
    return true;
  };
  for (u64 n = 0; n < 2000; ++n) CHECK(is_prime(n) == slow(n));
  CHECK(is_prime(2147483647));        // 2^31 - 1
  CHECK(!is_prime(3215031751ull));    // strong pseudoprime to bases 2,3,5,7
  CHECK(is_prime(18446744073709551557ull));
  CHECK(!is_prime(18446744073709551556ull));
}

TEST_CASE("sieve agrees with is_prime") {
  std::vector<u64> ps = primes_up_to(1000);
  CHECK(ps.size() == 168);
  CHECK(ps.front() == 2);
  CHECK(ps.back() == 997);
  u64 idx = 0;
  for (u64 n = 0; n <= 1000; ++n) {
    bool in = idx < ps.size() && ps[idx] == n;
    CHECK(in == is_prime(n));
    if (in) ++idx;
  }
}

TEST_CASE("integer square root") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(1) == 1);
  CHECK(isqrt(2) == 1);
  CHECK(isqrt(3) == 1);
  CHECK(isqrt(4) == 2);
  CHECK(isqrt(15241578750190521ull) == 123456789);
  CHECK(isqrt(15241578750190520ull) == 123456788);
  for (u64 n : {99ull, 100ull, 101ull, 4294967295ull, 4294967296ull, 4294967297ull,
                18446744073709551615ull}) {
    u64 r = isqrt(n);
    CHECK(r * r <= n);
    bool next_square_exceeds = (r + 1) > 4294967295ull || (r + 1) * (r + 1) > n;
    CHECK(next_square_exceeds);
  }
}

TEST_CASE("modular inverse and order") {
  CHECK(invmod(7, 25) == 18);
  CHECK(invmod(1, 2) == 1);
  for (u64 m : {25ull, 49ull, 101ull, 4294967291ull * 1}) {
    for (u64 a = 1; a < 30; ++a) {
      bool unit = true;
      for (u64 g = 2; g <= a; ++g)
        if (a % g == 0 && m % g == 0) unit = false;
      if (!unit) continue;
      CHECK(mulmod(invmod(a, m), a, m) == 1);
    }
  }
  CHECK(mult_order(2, 7) == 3);
  CHECK(mult_order(3, 7) == 6);
  CHECK(mult_order(1, 13) == 1);
  // order divides p - 1 and is exact
  for (u64 p : {101ull, 541ull}) {
    for (u64 a = 2; a < 40; ++a) {
      u64 o = mult_order(a, p);
      CHECK((p - 1) % o == 0);
      CHECK(powmod(a, o, p) == 1);
      // no proper divisor of o works
      for (u64 q = 2; q <= o; ++q)
        if (o % q == 0) CHECK(powmod(a, o / q, p) != 1);
    }
  }
}

TEST_CASE("powmod against repeated multiplication") {
  for (u64 b : {2ull, 10ull, 4294967295ull}) {
    u64 m = 1000000007;
    u64 acc = 1;
    for (u64 e = 0; e < 40; ++e) {
      CHECK(powmod(b % m, e, m) == acc);
      acc = mulmod(acc, b % m, m);
    }
  }
  CHECK(powmod(5, 0, 7) == 1);
  CHECK(powmod(0, 5, 7) == 0);
}

}  // TEST_SUITE
