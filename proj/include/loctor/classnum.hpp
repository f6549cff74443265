#pragma once

/*
 * Hurwitz class numbers H(N), indexed by the positive value N = |D| of the
 * discriminant D = -N < 0.  H(N) is the number of SL_2(Z)-classes of
 * positive definite integral binary quadratic forms of discriminant -N,
 * counting classes of multiples of x^2 + y^2 with weight 1/2 and of
 * x^2 + xy + y^2 with weight 1/3.  H(N) = 0 for N = 1, 2 mod 4.
 *
 * All values are exchanged as the integer 6H(N).
 */

#include <vector>

#include "loctor/errors.hpp"
#include "loctor/primes.hpp"

namespace loctor {

/* 6 H(n) by enumeration of reduced forms (A, B, C), B^2 - 4AC = -n,
 * -A < B <= A <= C, B >= 0 when A = C.  Requires n >= 3. */
u64 hurwitz_six(u64 n);

/* 6 H(n) for all 0 <= n <= n_max in one pass over (A, B, C); entries 0, 1,
 * 2 are 0 (H is supported on n >= 3 here).  n_max is capped at 10^7
 * (throws budget_exceeded): the pass visits ~0.17 n_max^{3/2} forms. */
std::vector<u64> class_number_table(u64 n_max);

}  // namespace loctor
