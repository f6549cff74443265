#include "loctor/classnum.hpp"

namespace loctor {

namespace {

/* weight of a reduced form as a multiple of 6: (A,A,A) is a multiple of
 * x^2+xy+y^2, (A,0,A) of x^2+y^2 */
u64 six_weight(u64 A, i64 B, u64 C) {
  if (A == C && B == (i64)A) return 2;
  if (A == C && B == 0) return 3;
  return 6;
}

}  // namespace

u64 hurwitz_six(u64 n) {
  if (n < 3) fail(errc::precondition_violated, "class number index must be >= 3");
  u64 m = n % 4;
  if (m == 1 || m == 2) return 0;
  u64 six = 0;
  for (u64 A = 1; 3 * A * A <= n; ++A) {
    for (i64 B = -(i64)A + 1; B <= (i64)A; ++B) {
      if ((u64)(B & 1) != (m & 1)) continue;  // B^2 = -n mod 4
      u64 num = n + (u64)(B * B);
      if (num % (4 * A) != 0) continue;
      u64 C = num / (4 * A);
      if (C < A) continue;
      if (A == C && B < 0) continue;
      six += six_weight(A, B, C);
    }
  }
  return six;
}

std::vector<u64> class_number_table(u64 n_max) {
  if (n_max > 10000000) fail(errc::budget_exceeded, "class number table capped at 10^7");
  std::vector<u64> six(n_max + 1, 0);
  for (u64 A = 1; 3 * A * A <= n_max; ++A) {
    for (i64 B = -(i64)A + 1; B <= (i64)A; ++B) {
      u64 B2 = (u64)(B * B);
      for (u64 C = A; 4 * A * C <= n_max + B2; ++C) {
        u64 n = 4 * A * C - B2;  // >= 3A^2 >= 3
        if (A == C && B < 0) continue;
        six[n] += six_weight(A, B, C);
      }
    }
  }
  return six;
}

}  // namespace loctor
