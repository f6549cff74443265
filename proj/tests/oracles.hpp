#pragma once

/*
 * Test-side oracles, deliberately independent of the library group law.
 *
 * Addition uses the complete projective formulas for
 * Y^2 Z = X^3 + a X Z^2 + b Z^3 (Bosma-Lenstra, in the Renes-Costello-
 * Batina arrangement).  They are correct over any commutative ring in
 * which the inputs are unimodular, except when the difference of the two
 * points reduces to a point of exact order 2; there the output degrades
 * to the zero triple, which then propagates.  A ladder therefore ends in
 * exactly one of: the true value, or the zero triple.  Since the zero
 * triple is never the projective identity, "[p]P laddered to the
 * identity" is a sound p-torsion test for odd p even on points of even
 * order (whose true [p]P is nonzero anyway).
 *
 * Over GR(p^2, d) the points reducing to the identity form the kernel
 * { (p*t : 1 : 0) } of size p^d, and the full p-torsion subgroup is
 * enumerated fiber by fiber over the residue-field p-torsion.
 */

#include <vector>

#include "loctor/curves.hpp"
#include "loctor/rings.hpp"

namespace oracle {

using namespace loctor;

template <class Elt>
struct proj {
  Elt X, Y, Z;
};

using fp_proj = proj<fp_element>;
using gr_proj = proj<gr_element>;

inline fp_proj to_proj(const ring_context& ctx, const fp_point& P) {
  if (P.inf) return {fp_zero(ctx), fp_one(ctx), fp_zero(ctx)};
  return {P.x, P.y, fp_one(ctx)};
}
inline gr_proj to_proj(const ring_context& ctx, const gr_point& P) {
  if (P.inf) return {gr_zero(ctx), gr_one(ctx), gr_zero(ctx)};
  return {P.x, P.y, gr_one(ctx)};
}

/* projective equality via vanishing 2x2 minors */
template <class Elt>
bool proj_eq(const proj<Elt>& P, const proj<Elt>& Q) {
  return is_zero(P.X * Q.Y - Q.X * P.Y) && is_zero(P.X * Q.Z - Q.X * P.Z) &&
         is_zero(P.Y * Q.Z - Q.Y * P.Z);
}

template <class Elt>
bool proj_is_identity(const proj<Elt>& P) {
  return is_zero(P.X) && is_zero(P.Z) && is_unit(P.Y);
}

template <class Elt, class Curve>
proj<Elt> rcb_add(const Curve& E, const proj<Elt>& P, const proj<Elt>& Q) {
  const Elt &X1 = P.X, &Y1 = P.Y, &Z1 = P.Z;
  const Elt &X2 = Q.X, &Y2 = Q.Y, &Z2 = Q.Z;
  const Elt &a = E.a, &b = E.b;

  Elt xx = X1 * X2, yy = Y1 * Y2, zz = Z1 * Z2;
  Elt xz = X1 * Z2 + X2 * Z1;
  Elt xy = X1 * Y2 + X2 * Y1;
  Elt yz = Y1 * Z2 + Y2 * Z1;
  Elt b3 = b + b + b;
  Elt t0 = yy - a * xz - b3 * zz;           // Y1Y2 - a(X1Z2+X2Z1) - 3bZ1Z2
  Elt t1 = yy + a * xz + b3 * zz;           // Y1Y2 + a(X1Z2+X2Z1) + 3bZ1Z2
  Elt t2 = a * xx + b3 * xz - a * a * zz;   // aX1X2 + 3b(X1Z2+X2Z1) - a^2 Z1Z2
  Elt t3 = xx + xx + xx + a * zz;           // 3X1X2 + aZ1Z2

  return {xy * t0 - yz * t2, t3 * t2 + t1 * t0, yz * t1 + xy * t3};
}

template <class Elt, class Curve>
proj<Elt> rcb_mul(const Curve& E, u64 n, const proj<Elt>& P) {
  const ring_context& ctx = *E.ctx;
  proj<Elt> R = to_proj(ctx, ec_point<Elt>{});  // identity
  proj<Elt> B = P;
  // LSB-first ladder: every addition has a multiple of P as difference.
  while (n) {
    if (n & 1) R = rcb_add<Elt, Curve>(E, R, B);
    B = rcb_add<Elt, Curve>(E, B, B);
    n >>= 1;
  }
  return R;
}

/* Affine points by raw (x, y) scan; only ring arithmetic involved. */
inline std::vector<fp_point> all_affine_points(const fp_curve& E) {
  const ring_context& ctx = *E.ctx;
  u64 q = static_cast<u64>(ctx.q());
  std::vector<fp_point> pts;
  for (u64 i = 0; i < q; ++i) {
    fp_element x = fp_from_index(ctx, i);
    fp_element rhs = (x * x + E.a) * x + E.b;
    for (u64 j = 0; j < q; ++j) {
      fp_element y = fp_from_index(ctx, j);
      if (y * y == rhs) pts.push_back({false, x, y});
    }
  }
  return pts;
}

/* All points of E(F_{p^d}) killed by p, via the complete formulas only. */
inline std::vector<fp_proj> field_p_torsion(const fp_curve& E) {
  const ring_context& ctx = *E.ctx;
  std::vector<fp_proj> out;
  out.push_back(to_proj(ctx, fp_point{}));
  for (const fp_point& P : all_affine_points(E)) {
    fp_proj pp = to_proj(ctx, P);
    if (proj_is_identity(rcb_mul<fp_element, fp_curve>(E, static_cast<u64>(ctx.p), pp)))
      out.push_back(pp);
  }
  return out;
}

/* |E(GR(p^2, d))[p]|, fibering over the residue-field p-torsion.  The
 * kernel of reduction contributes p^d; each residue p-torsion point
 * contributes those of its q affine lifts that the ladder kills. */
inline u64 ring_p_torsion_size(const gr_curve& Ehat) {
  const ring_context& ctx = *Ehat.ctx;
  fp_curve E = {&ctx, reduce_mod_p(Ehat.a), reduce_mod_p(Ehat.b)};
  u64 q = static_cast<u64>(ctx.q());
  u64 total = q;  // the reduction kernel is killed by p
  gr_element pe = gr_from_int(ctx, (i128)ctx.p);
  for (const fp_point& P : all_affine_points(E)) {
    fp_proj pp = to_proj(ctx, P);
    if (!proj_is_identity(rcb_mul<fp_element, fp_curve>(E, static_cast<u64>(ctx.p), pp)))
      continue;
    for (u64 i = 0; i < q; ++i) {
      gr_element x = lift(P.x) + pe * lift(fp_from_index(ctx, i));
      gr_element rhs = (x * x + Ehat.a) * x + Ehat.b;
      for (u64 j = 0; j < q; ++j) {
        gr_element y = lift(P.y) + pe * lift(fp_from_index(ctx, j));
        if (!(y * y == rhs)) continue;
        gr_proj qq = {x, y, gr_one(ctx)};
        if (proj_is_identity(rcb_mul<gr_element, gr_curve>(Ehat, static_cast<u64>(ctx.p), qq)))
          ++total;
      }
    }
  }
  return total;
}

/* splitmix64, the test-side deterministic RNG */
struct rng64 {
  u64 s;
  explicit rng64(u64 seed) : s(seed) {}
  u64 next() {
    s += 0x9e3779b97f4a7c15ull;
    u64 z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

}  // namespace oracle
