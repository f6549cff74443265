#pragma once

/*
 * The canonical-lift criterion.  A short Weierstrass pair (A, B) over
 * Z/p^2, lifted coefficientwise into GR(p^2, d) = W_2(F_{p^d}), either
 * keeps the p-rank of its point group at d (the reduction kernel only) or
 * raises it to d + 1.  The latter happens exactly when some point of
 * order p of the residue curve lifts, and that is decided by one ladder:
 * lift a point Q of order p coordinatewise in x, solve for y by Hensel,
 * and test [p-1]Q~ = -Q~ by exact coordinate equality.  The equality form
 * keeps every chord/tangent denominator a unit; [p]Q~ itself would leave
 * the affine chart.
 *
 * The verdict does not depend on the choice of Q or of its lift: two
 * lifts of Q differ by a kernel element, the kernel is killed by p, and
 * over F_{p^d} the points of order p that reduction provides are all
 * multiples of one another.
 */

#include <utility>
#include <vector>

#include "loctor/classnum.hpp"
#include "loctor/counting.hpp"

namespace loctor {

/* True iff rank_p of E_{A,B}(GR(p^2, d)) is d + 1.  A, B are residues mod
 * p^2.  Requires p >= 5 (small_prime) and a nonsingular reduction
 * (singular_curve).  Supersingular reductions and curves without p-torsion
 * over F_{p^d} are screened out by the trace test a_p^d = 1 mod p. */
bool canonical_lift_test(u64 A, u64 B, u64 p, unsigned d);
bool canonical_lift_test(const ring_context& ctx, u64 A, u64 B);

/* d + (canonical_lift_test ? 1 : 0) */
unsigned local_p_rank(u64 A, u64 B, u64 p, unsigned d);
unsigned local_p_rank(const ring_context& ctx, u64 A, u64 B);

/* All lifts (A, B) of (a, b) over F_p with rank d + 1, in ascending
 * (A, B) order.  Requires a nonsingular ordinary residue curve with
 * j not in {0, 1728} and p-torsion over F_{p^d}; the returned list then
 * has exactly p of the p^2 candidate pairs. */
std::vector<std::pair<u64, u64>> lifts_with_rank(u64 a, u64 b, u64 p, unsigned d,
                                                 unsigned threads = 0);

/* nu_d(p) and its split by the j-invariant of the reduction. */
struct nu_record {
  u64 p = 0;
  unsigned d = 1;
  u64 nu = 0;        // nu_prime + nu_0 + nu_1728
  u64 nu_prime = 0;  // j not in {0, 1728}
  u64 nu_0 = 0;      // a = 0 mod p (j = 0)
  u64 nu_1728 = 0;   // b = 0 mod p (j = 1728)
  u64 pairs_examined = 0;  // p^4
};

/* Exhaustive nu_d(p) over all (A, B) in (Z/p^2)^2 with unit discriminant.
 * The trace screen and the order-p point are computed once per residue
 * pair; each of its p^2 lifts then costs one ladder.  p_budget caps the
 * p^4 enumeration (default p <= 13). */
nu_record nu_brute(u64 p, unsigned d, unsigned threads = 0, u64 p_budget = 13);

/* The trace-r pair count against the Hurwitz class number target.
 *
 * count_all counts nonsingular (a, b) in F_p x F_p with a_p = r; the
 * identity is 2 count_all = (p-1) H(4p - r^2), checked exactly as
 * 12 count_all = (p-1) six_h.  count_ab_nonzero additionally requires
 * a, b both nonzero (it drops the j in {0, 1728} rows and is strictly
 * smaller whenever those rows carry trace r). */
struct deuring_check {
  u64 p = 0;
  i64 r = 0;
  u64 count_all = 0;
  u64 count_ab_nonzero = 0;
  u64 six_h = 0;  // 6 H(4p - r^2)
  bool identity_holds = false;
};

/* Requires p >= 5 prime and 0 < |r| < 2 sqrt(p). */
deuring_check verify_deuring(u64 p, i64 r);

}  // namespace loctor
