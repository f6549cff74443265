#pragma once

/*
 * Curve-level and family-level statistics on local torsion primes: the
 * per-curve scan over p <= x_max (with the unramified lift test at good
 * p >= 5 and the division-polynomial detector at bad or tiny primes),
 * companion-form counts, coefficient-box sweeps, the convergent prime
 * sum, CRT construction of curves with prescribed torsion primes, and
 * exhaustive nu sums.
 *
 * A prime enters `found` only when a detector proved torsion; primes the
 * detectors cannot decide are listed in `undetermined` with a reason and
 * are never counted in pi.  Degree-d detection at good p >= 5 runs the
 * lift test at e = ord_p(a_p) only: the verdict at e determines every
 * unramified degree that is a multiple of e, and degrees not divisible
 * by e cannot hold torsion.  Torsion found over Q_p itself counts for
 * every d >= 1.
 */

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "loctor/curves.hpp"
#include "loctor/lifttest.hpp"

namespace loctor {

using bigrational = boost::multiprecision::cpp_rational;

struct found_prime {
  u64 p = 0;
  std::string method;  // "lift-test" or "division-poly"
  bool operator==(const found_prime&) const = default;
};

struct undetermined_prime {
  u64 p = 0;
  std::string reason;
  bool operator==(const undetermined_prime&) const = default;
};

struct local_torsion_report {
  std::string label;
  u64 x_max = 0;
  unsigned d = 1;
  std::vector<found_prime> found;                // ascending p
  std::vector<undetermined_prime> undetermined;  // ascending p
};

struct torsion_scan_options {
  bool all_degrees = false;  // also run every multiple of e up to d and
                             // require identical verdicts
  unsigned threads = 0;      // 0: hardware count
  unsigned d_cap = 4;        // hard ceiling 6
};

/* Scan all primes p <= x_max for torsion over extensions of Q_p of degree
 * at most d.  x_max >= 2, 1 <= d <= min(d_cap, 6). */
local_torsion_report local_torsion_primes(const general_curve& E,
                                          const std::string& label, u64 x_max,
                                          unsigned d,
                                          const torsion_scan_options& opt = {});

/* Good-reduction primes 7 <= p <= x_max with a_p = 1 or -1 whose lift
 * test passes at degree 1 or 2 respectively; x_max >= 7. */
struct cf_report {
  u64 x_max = 0;
  std::vector<u64> primes;
};
cf_report pi_cf(const general_curve& E, u64 x_max, unsigned threads = 0);

struct sweep_row {
  i64 a = 0, b = 0;
  u64 pi = 0;
};

struct sweep_report {
  i64 bound_a = 0, bound_b = 0;
  u64 x_max = 0;
  unsigned d = 1;
  u64 curve_count = 0;       // nonsingular pairs examined
  u64 singular_skipped = 0;  // pairs with 4a^3 + 27b^2 = 0
  u64 pi_total = 0;
  std::map<u64, u64> histogram;                 // pi value -> curves
  std::map<std::string, u64> undetermined_tally;  // reason -> prime slots
  std::vector<sweep_row> rows;  // ordered by (|a|, a, |b|, b)

  bigrational average() const;
};

struct sweep_options {
  u64 sample = 0;       // 0: exhaustive, else this many distinct pairs
  u64 budget = 100000;  // exhaustive cap on 4AB
  unsigned threads = 0;
};

/* pi over the family |a| <= A, |b| <= B (discriminant zero excluded).
 * Exhaustive runs require 4AB within budget (budget_exceeded suggests
 * sampling); a family with no curves is empty_family. */
sweep_report sweep(i64 A, i64 B, u64 x_max, unsigned d,
                   const sweep_options& opt = {});

/* sum over primes p <= x_max of 1 / (4 p^(3/2)), compensated */
double heuristic_sum(u64 x_max);

/* Coefficients (A, B), reduced mod the product of p^2, of a curve with a
 * point of order p over Q_p for every p in target_primes: per prime the
 * first trace-1 residue curve is lifted to its first passing lift, the
 * lifts are CRT-combined, and the result is re-verified with the scan.
 * Targets must be distinct primes in [5, 1000], at most 8 of them. */
std::pair<bigint, bigint> construct_curve(const std::vector<u64>& target_primes);

/* The trace congruence a_p = chi1(p) + chi2(p) mod 15 satisfied by the
 * conductor-50 curve y^2 + xy + y = x^3 - x - 2, whence a_p is never
 * +-1 mod 15 and pi_cf vanishes identically for it. */
struct congruence_report {
  u64 x_max = 0;
  u64 primes_checked = 0;
  std::vector<u64> congruence_violations;  // expected empty
  std::vector<u64> residue_violations;     // a_p = +-1 mod 15 hits
};
congruence_report verify_50a1(u64 x_max);

/* exact sums of nu_d(p), nu_d(p)/p^2, nu_d(p)/p^4 over primes
 * 5 <= p <= p_max; p_max <= 31 */
struct nu_sums {
  u64 total = 0;
  bigrational over_p2, over_p4;
};
nu_sums empirical_nu_sums(u64 p_max, unsigned d, unsigned threads = 0);

struct labeled_curve {
  std::string label;
  general_curve model;
};

/* CSV with header `label,a1,a2,a3,a4,a6`, decimal integers */
std::vector<labeled_curve> load_curve_csv(const std::string& path);
const general_curve* find_curve(const std::vector<labeled_curve>& curves,
                                const std::string& label);

/* {"curve","xmax","d","found":[{"p","method"}],"undetermined":[{"p","reason"}]} */
std::string report_json(const local_torsion_report& r);

/* header a,b,pi; one row per examined curve */
std::string sweep_csv(const sweep_report& r);

}  // namespace loctor
