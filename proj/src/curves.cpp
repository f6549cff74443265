#include "loctor/curves.hpp"

namespace loctor {

u64 mod_u64(const bigint& v, u64 m) {
  bigint r = v % m;
  if (r < 0) r += m;
  return r.convert_to<u64>();
}

bool has_good_reduction(const general_curve& E, u64 p) {
  bigint d = E.disc();
  if (d == 0) fail(errc::singular_curve, "discriminant is zero");
  return d % p != 0;
}

fp_curve make_fp_curve(const ring_context& ctx, i128 a, i128 b) {
  return {&ctx, fp_from_int(ctx, a), fp_from_int(ctx, b)};
}
fp_curve make_fp_curve(const ring_context& ctx, fp_element a, fp_element b) {
  require_same_context(ctx, *a.ctx);
  require_same_context(ctx, *b.ctx);
  return {&ctx, std::move(a), std::move(b)};
}
gr_curve make_gr_curve(const ring_context& ctx, i128 a, i128 b) {
  return {&ctx, gr_from_int(ctx, a), gr_from_int(ctx, b)};
}
gr_curve make_gr_curve(const ring_context& ctx, gr_element a, gr_element b) {
  require_same_context(ctx, *a.ctx);
  require_same_context(ctx, *b.ctx);
  return {&ctx, std::move(a), std::move(b)};
}

fp_curve reduce_mod_p(const general_curve& E, const ring_context& ctx) {
  if (ctx.p < 5) fail(errc::small_prime, "short-model reduction needs p >= 5");
  if (!has_good_reduction(E, ctx.p)) fail(errc::bad_reduction, "p divides the discriminant");
  u64 a = mod_u64(-27 * E.c4(), ctx.p);
  u64 b = mod_u64(-54 * E.c6(), ctx.p);
  return make_fp_curve(ctx, (i128)a, (i128)b);
}

gr_curve lift_mod_p2(const general_curve& E, const ring_context& ctx) {
  if (ctx.p < 5) fail(errc::small_prime, "short-model reduction needs p >= 5");
  if (!has_good_reduction(E, ctx.p)) fail(errc::bad_reduction, "p divides the discriminant");
  u64 a = mod_u64(-27 * E.c4(), ctx.p2);
  u64 b = mod_u64(-54 * E.c6(), ctx.p2);
  return make_gr_curve(ctx, (i128)a, (i128)b);
}

namespace {
fp_element disc_term(const fp_curve& E) {
  const ring_context& ctx = *E.ctx;
  fp_element four = fp_from_int(ctx, 4), twentyseven = fp_from_int(ctx, 27);
  return four * E.a * E.a * E.a + twentyseven * E.b * E.b;
}
}  // namespace

bool is_singular(const fp_curve& E) { return is_zero(disc_term(E)); }

fp_element j_invariant(const fp_curve& E) {
  const ring_context& ctx = *E.ctx;
  fp_element den = disc_term(E);
  if (is_zero(den)) fail(errc::singular_curve, "singular short model has no j-invariant");
  fp_element num = fp_from_int(ctx, 6912) * E.a * E.a * E.a;  // 1728 * 4a^3
  return num * invert(den);
}

fp_point make_fp_point(fp_element x, fp_element y) {
  require_same_context(*x.ctx, *y.ctx);
  return {false, std::move(x), std::move(y)};
}
gr_point make_gr_point(gr_element x, gr_element y) {
  require_same_context(*x.ctx, *y.ctx);
  return {false, std::move(x), std::move(y)};
}

namespace {

template <class Curve, class Point>
bool on_curve_impl(const Curve& E, const Point& P) {
  if (P.inf) return true;
  return P.y * P.y == (P.x * P.x + E.a) * P.x + E.b;
}

template <class Curve, class Point, class Elt>
Point double_impl(const Curve& E, const Point& P) {
  if (P.inf) return Point{};
  if (is_zero(P.y)) return Point{};  // P = -P
  Elt two = P.y + P.y;
  if (!is_unit(two)) {
    fail(errc::non_unit_denominator, "doubling a point whose reduction is 2-torsion");
  }
  Elt three_x2 = P.x * P.x;
  three_x2 = three_x2 + three_x2 + three_x2;
  Elt lam = (three_x2 + E.a) * invert(two);
  Elt x3 = lam * lam - P.x - P.x;
  Elt y3 = lam * (P.x - x3) - P.y;
  return {false, std::move(x3), std::move(y3)};
}

template <class Curve, class Point, class Elt>
Point add_impl(const Curve& E, const Point& P, const Point& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  if (P.x == Q.x) {
    if (P.y == -Q.y) return Point{};  // includes the shared y = 0 case
    if (P.y == Q.y) return double_impl<Curve, Point, Elt>(E, P);
    // Only possible over the ring: equal x, y's differing by a nonzero
    // multiple of p.  The sum has no affine representative.
    fail(errc::non_unit_denominator, "sum leaves the affine chart");
  }
  Elt dx = Q.x - P.x;
  if (!is_unit(dx)) {
    fail(errc::non_unit_denominator, "x-difference is a nonzero non-unit");
  }
  Elt lam = (Q.y - P.y) * invert(dx);
  Elt x3 = lam * lam - P.x - Q.x;
  Elt y3 = lam * (P.x - x3) - P.y;
  return {false, std::move(x3), std::move(y3)};
}

template <class Curve, class Point, class Elt>
Point mul_impl(const Curve& E, u128 n, const Point& P) {
  Point R{};
  if (n == 0 || P.inf) return R;
  int hi = 127;
  while (hi > 0 && !((n >> hi) & 1)) --hi;
  for (int i = hi; i >= 0; --i) {
    R = add_impl<Curve, Point, Elt>(E, R, R);
    if ((n >> i) & 1) R = add_impl<Curve, Point, Elt>(E, R, P);
  }
  return R;
}

}  // namespace

bool on_curve(const fp_curve& E, const fp_point& P) { return on_curve_impl(E, P); }
bool on_curve(const gr_curve& E, const gr_point& P) { return on_curve_impl(E, P); }

fp_point ec_neg(const fp_point& P) {
  if (P.inf) return P;
  return {false, P.x, -P.y};
}
gr_point ec_neg(const gr_point& P) {
  if (P.inf) return P;
  return {false, P.x, -P.y};
}

fp_point ec_add(const fp_curve& E, const fp_point& P, const fp_point& Q) {
  return add_impl<fp_curve, fp_point, fp_element>(E, P, Q);
}
gr_point ec_add(const gr_curve& E, const gr_point& P, const gr_point& Q) {
  return add_impl<gr_curve, gr_point, gr_element>(E, P, Q);
}

fp_point scalar_mul(const fp_curve& E, u128 n, const fp_point& P) {
  return mul_impl<fp_curve, fp_point, fp_element>(E, n, P);
}
gr_point scalar_mul(const gr_curve& E, u128 n, const gr_point& P) {
  return mul_impl<gr_curve, gr_point, gr_element>(E, n, P);
}

std::optional<fp_point> lift_x(const fp_curve& E, const fp_element& x) {
  fp_element rhs = (x * x + E.a) * x + E.b;
  std::optional<fp_element> y = sqrt_in_field(rhs);
  if (!y) return std::nullopt;
  return make_fp_point(x, *y);
}

std::vector<fp_point> enumerate_points(const fp_curve& E) {
  const ring_context& ctx = *E.ctx;
  if (ctx.q() > 10000) fail(errc::too_large, "field too large to enumerate");
  u64 q = static_cast<u64>(ctx.q());
  std::vector<fp_point> pts;
  for (u64 i = 0; i < q; ++i) {
    fp_element x = fp_from_index(ctx, i);
    std::optional<fp_point> P = lift_x(E, x);
    if (!P) continue;
    pts.push_back(*P);
    if (!is_zero(P->y)) pts.push_back(ec_neg(*P));
  }
  return pts;
}

u64 count_points_naive(const fp_curve& E) {
  return enumerate_points(E).size() + 1;
}

}  // namespace loctor
