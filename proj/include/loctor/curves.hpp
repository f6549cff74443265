#pragma once

/*
 * Elliptic curves in three guises:
 *
 *   general_curve  integral model  y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
 *                  with exact (arbitrary precision) coefficients;
 *   fp_curve       short model y^2 = x^3 + ax + b over F_{p^d};
 *   gr_curve       the same shape over GR(p^2, d).
 *
 * Over the field the affine group law is total (the point at infinity is
 * the identity).  Over GR(p^2, d) it is partial: an addition whose result
 * leaves the affine chart, or whose inputs cannot be resolved affinely,
 * throws non_unit_denominator.  Callers that walk multiples of a point
 * whose reduction has odd prime order never hit that case; see lifttest.
 */

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "loctor/rings.hpp"

namespace loctor {

using bigint = boost::multiprecision::cpp_int;

/* value of v mod m in [0, m) */
u64 mod_u64(const bigint& v, u64 m);

struct general_curve {
  bigint a1, a2, a3, a4, a6;

  bigint b2() const { return a1 * a1 + 4 * a2; }
  bigint b4() const { return 2 * a4 + a1 * a3; }
  bigint b6() const { return a3 * a3 + 4 * a6; }
  bigint b8() const {
    return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  }
  bigint c4() const { return b2() * b2() - 24 * b4(); }
  bigint c6() const {
    bigint b = b2();
    return -b * b * b + 36 * b * b4() - 216 * b6();
  }
  bigint disc() const {
    bigint c4v = c4(), c6v = c6();
    return (c4v * c4v * c4v - c6v * c6v) / 1728;
  }
};

/* p does not divide the discriminant of the given (assumed minimal) model. */
bool has_good_reduction(const general_curve& E, u64 p);

struct fp_curve {
  const ring_context* ctx = nullptr;
  fp_element a, b;
};

struct gr_curve {
  const ring_context* ctx = nullptr;
  gr_element a, b;
};

fp_curve make_fp_curve(const ring_context& ctx, i128 a, i128 b);
fp_curve make_fp_curve(const ring_context& ctx, fp_element a, fp_element b);
gr_curve make_gr_curve(const ring_context& ctx, i128 a, i128 b);
gr_curve make_gr_curve(const ring_context& ctx, gr_element a, gr_element b);

/* Reduction of the short model y^2 = x^3 - 27 c4 x - 54 c6, which is
 * Q-isomorphic to E by a substitution with scale factor 6.  Requires
 * ctx.p >= 5 (throws small_prime) and good reduction (throws
 * bad_reduction). */
fp_curve reduce_mod_p(const general_curve& E, const ring_context& ctx);

/* The same short model taken mod p^2; reduce_mod_p of the result recovers
 * reduce_mod_p of E.  Same preconditions. */
gr_curve lift_mod_p2(const general_curve& E, const ring_context& ctx);

bool is_singular(const fp_curve& E);           // 4a^3 + 27b^2 = 0
fp_element j_invariant(const fp_curve& E);     // throws singular_curve

template <class Elt>
struct ec_point {
  bool inf = true;
  Elt x{}, y{};

  bool operator==(const ec_point& o) const {
    if (inf || o.inf) return inf == o.inf;
    return x == o.x && y == o.y;
  }
  bool operator!=(const ec_point& o) const { return !(*this == o); }
};

using fp_point = ec_point<fp_element>;
using gr_point = ec_point<gr_element>;

fp_point make_fp_point(fp_element x, fp_element y);
gr_point make_gr_point(gr_element x, gr_element y);

bool on_curve(const fp_curve& E, const fp_point& P);
bool on_curve(const gr_curve& E, const gr_point& P);

fp_point ec_neg(const fp_point& P);
gr_point ec_neg(const gr_point& P);

fp_point ec_add(const fp_curve& E, const fp_point& P, const fp_point& Q);
gr_point ec_add(const gr_curve& E, const gr_point& P, const gr_point& Q);

fp_point scalar_mul(const fp_curve& E, u128 n, const fp_point& P);
gr_point scalar_mul(const gr_curve& E, u128 n, const gr_point& P);

/* The affine point (x, y) with the lexicographically least y lifting x, if
 * x^3 + ax + b is a square. */
std::optional<fp_point> lift_x(const fp_curve& E, const fp_element& x);

/* All affine points, scanned in index order; |F_{p^d}| is capped at 10^4
 * (throws too_large).  Intended for small fields and test oracles. */
std::vector<fp_point> enumerate_points(const fp_curve& E);

/* #E(F_{p^d}) = affine count + 1, by full enumeration; same cap. */
u64 count_points_naive(const fp_curve& E);

}  // namespace loctor
