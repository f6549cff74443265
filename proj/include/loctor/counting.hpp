#pragma once

/*
 * Trace of Frobenius and point counts over extensions.
 *
 * a_p = p + 1 - #E(F_p) is computed either by a quadratic-character sum
 * (O(p), exact, the default for p <= 10^5) or by baby-step giant-step
 * order finding in the Hasse interval with quadratic-twist disambiguation
 * (for larger p).  Counts over F_{p^d} follow from the trace recurrence
 *
 *     t_0 = 2,  t_1 = a_p,  t_m = a_p t_{m-1} - p t_{m-2},
 *
 * #E(F_{p^d}) = p^d + 1 - t_d.  An ordinary curve has a point of order p
 * over F_{p^d} exactly when a_p^d = 1 mod p; its p-primary part there is
 * cyclic, which makes order-p points easy to sample.
 */

#include "loctor/curves.hpp"

namespace loctor {

enum class trace_method { charsum, bsgs, enumeration };

struct trace_data {
  u64 p = 0;
  i64 ap = 0;
  trace_method method = trace_method::charsum;
};

/* Character-sum count on y^2 = x^3 + ax + b over F_p (not an extension
 * field).  Throws singular_curve when 4a^3 + 27b^2 = 0 mod p. */
i64 ap_charsum_raw(u64 p, u64 a, u64 b);
trace_data ap_charsum(const fp_curve& E);  // requires d = 1

/* BSGS/Mestre order finding; requires p >= 229 (below that the Hasse
 * interval is too crowded; call ap_charsum).  Throws ambiguous_order if
 * the candidate order is not pinned down after the sample budget. */
trace_data ap_bsgs(const fp_curve& E);

/* Dispatch: charsum for p <= threshold, else BSGS with charsum fallback
 * on ambiguity. */
trace_data ap_auto(const fp_curve& E, u64 threshold = 100000);
i64 ap_auto_raw(u64 p, u64 a, u64 b, u64 threshold = 100000);

/* t_d of the recurrence; #E(F_{p^d}) = p^d + 1 - t_d. */
i128 trace_power(i64 ap, u64 p, unsigned d);

/* #E(F_{p^d}) for the base-change of a curve over F_p. */
u128 count_over_ext(i64 ap, u64 p, unsigned d);

/* a_p^d = 1 mod p, i.e. the base change to F_{p^d} has a point of order
 * p (ordinary case); false whenever a_p = 0 mod p. */
bool has_p_torsion_over_ext(i64 ap, u64 p, unsigned d);

/* A point of exact order p on E(F_{p^d}).  The curve must be a constant-
 * coefficient model (base change from F_p); its trace is computed
 * internally.  Sampling is deterministic in (p, d, a, b).  Throws
 * no_p_torsion if a_p = 0 or a_p^d != 1 mod p, sample_exhausted after
 * 64p failed samples. */
fp_point find_point_of_order_p(const fp_curve& E);

}  // namespace loctor
