#pragma once

/*
 * Direct detection of p-torsion over Q_p for p in {2, 3, 5, 7}: the
 * p-division polynomial of the integral model is solved over Z_p by
 * branch-and-lift, and each root is checked for a Q_p-rational
 * y-coordinate.  This is the only detector that works at bad-reduction
 * primes and at p in {2, 3}, and it doubles as an independent oracle for
 * the canonical-lift criterion at p in {5, 7}.
 *
 * Only integral x-coordinates are searched.  For p >= 3 a torsion point
 * with non-integral x would lie in the formal group, which is torsion
 * free over Z_p.  For p = 2 that argument fails (a 2-torsion x may have
 * valuation -2), so the 2-torsion cubic 4x^3 + b2 x^2 + 2 b4 x + b6 is
 * replaced by its monic transform in x' = 4x,
 *
 *     x'^3 + b2 x'^2 + 8 b4 x' + 16 b6,
 *
 * whose Q_2-roots are automatically integral and cover every 2-torsion
 * x = x'/4, integral or not.
 */

#include <vector>

#include "loctor/curves.hpp"
#include "loctor/errors.hpp"

namespace loctor {

/* integer polynomial; coefficient i belongs to x^i, trailing zeros allowed */
using zpoly = std::vector<bigint>;

zpoly zpoly_mul(const zpoly& f, const zpoly& g);
zpoly zpoly_sub(const zpoly& f, const zpoly& g);
zpoly zpoly_derivative(const zpoly& f);

/* f(x) reduced into [0, m); m >= 1 */
bigint zpoly_eval_mod(const zpoly& f, const bigint& x, const bigint& m);

/* The p-division polynomial of the general model, whose roots are the
 * x-coordinates of the affine p-torsion.  Degree (p^2 - 1) / 2 for odd p;
 * for p = 2 the relevant polynomial is 4x^3 + b2 x^2 + 2 b4 x + b6 of
 * degree 3.  Throws unsupported_prime outside p in {2, 3, 5, 7}. */
zpoly division_polynomial(const general_curve& E, u64 p);

struct padic_approximation {
  u64 p = 0;
  unsigned precision = 0;   // the residue is a class mod p^precision
  bigint residue;           // in [0, p^precision)
  int valuation_floor = 0;  // only integral roots are sought
};

/* All residues r mod p^k with f(r) = 0 mod p^k, found by lifting the
 * mod-p roots one digit at a time and branching where the derivative
 * vanishes mod p.  Every Z_p-root of f is congruent to exactly one
 * returned residue; a returned residue need not extend to a Z_p-root.
 * Requires nonzero f, prime p and k >= 2.  Results are sorted. */
std::vector<padic_approximation> padic_roots(const zpoly& f, u64 p, unsigned k);

enum class torsion_answer { yes, no, inconclusive };

/*
 * yes:  carries a witness.  For odd p, root is an x-residue mod p^k with
 *       psi_p(root) = 0 mod p^k, and sqrt_disc squares to
 *       4 root^3 + b2 root^2 + 2 b4 root + b6 mod p^witness_precision, so
 *       y = (sqrt_disc - a1 root - a3) / 2 satisfies the curve equation
 *       at that precision.  For p = 2, root is a residue of x' = 4x on
 *       the monic transform and sqrt_disc is unused.
 * no:   every branch was refuted at precision k.
 * inconclusive: precision k did not separate; retry with a larger k.
 */
struct torsion_verdict {
  torsion_answer answer = torsion_answer::inconclusive;
  u64 p = 0;
  unsigned precision = 0;
  unsigned witness_precision = 0;
  bigint root;
  bigint sqrt_disc;
};

/* Whether E acquires a point of order p over Q_p, decided at working
 * precision k.  Bad reduction is allowed; p must be in {2, 3, 5, 7}
 * (unsupported_prime) and E nonsingular (singular_curve). */
torsion_verdict small_prime_local_torsion(const general_curve& E, u64 p,
                                          unsigned k = 8);

/* small_prime_local_torsion at k = 8, 16, 32, 40, returning the first
 * decisive verdict. */
torsion_verdict small_prime_local_torsion_auto(const general_curve& E, u64 p);

}  // namespace loctor
