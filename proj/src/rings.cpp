#include "loctor/rings.hpp"

#include <algorithm>
#include <sstream>

namespace loctor {

void require_same_context(const ring_context& a, const ring_context& b) {
  if (!(a == b)) fail(errc::context_mismatch, "elements belong to different ring contexts");
}

const char* errc_name(errc k) noexcept {
  switch (k) {
    case errc::composite_modulus: return "composite_modulus";
    case errc::context_mismatch: return "context_mismatch";
    case errc::non_unit: return "non_unit";
    case errc::singular_root: return "singular_root";
    case errc::non_unit_denominator: return "non_unit_denominator";
    case errc::ladder_invariant_violated: return "ladder_invariant_violated";
    case errc::too_large: return "too_large";
    case errc::singular_curve: return "singular_curve";
    case errc::ambiguous_order: return "ambiguous_order";
    case errc::no_p_torsion: return "no_p_torsion";
    case errc::sample_exhausted: return "sample_exhausted";
    case errc::small_prime: return "small_prime";
    case errc::bad_reduction: return "bad_reduction";
    case errc::precondition_violated: return "precondition_violated";
    case errc::budget_exceeded: return "budget_exceeded";
    case errc::unsupported_prime: return "unsupported_prime";
    case errc::not_prime: return "not_prime";
    case errc::empty_family: return "empty_family";
    case errc::no_target_curve: return "no_target_curve";
  }
  return "unknown";
}

namespace {

/* Dense polynomial arithmetic over Z/m, m in {p, p^2}, reduced by the monic
 * modulus t^d + sum mod_c[i] t^i.  Vectors have fixed length d. */

void poly_mul_reduce(const std::vector<u64>& a, const std::vector<u64>& b,
                     std::vector<u64>& out, u64 m, const std::vector<u64>& mod_c) {
  const size_t d = mod_c.size();
  if (d == 1) {
    // t = -mod_c[0]; with a linear modulus elements are scalars.
    out.assign(1, mulmod(a[0], b[0], m));
    return;
  }
  std::vector<u64> conv(2 * d - 1, 0);
  for (size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < d; ++j) {
      conv[i + j] = (conv[i + j] + (u128)a[i] * b[j]) % m;
    }
  }
  // t^k = -sum mod_c[i] t^(k-d+i) for k >= d, applied top down.
  for (size_t k = 2 * d - 2; k >= d; --k) {
    u64 coef = conv[k];
    if (coef) {
      conv[k] = 0;
      for (size_t i = 0; i < d; ++i) {
        if (mod_c[i] == 0) continue;
        u64 sub = mulmod(coef, mod_c[i] % m, m);
        conv[k - d + i] = submod(conv[k - d + i], sub, m);
      }
    }
    if (k == d) break;
  }
  out.assign(conv.begin(), conv.begin() + d);
}

std::vector<u64> poly_add(const std::vector<u64>& a, const std::vector<u64>& b, u64 m) {
  std::vector<u64> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = addmod(a[i] % m, b[i] % m, m);
  return r;
}

std::vector<u64> poly_sub(const std::vector<u64>& a, const std::vector<u64>& b, u64 m) {
  std::vector<u64> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = submod(a[i] % m, b[i] % m, m);
  return r;
}

std::vector<u64> poly_neg(const std::vector<u64>& a, u64 m) {
  std::vector<u64> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] == 0 ? 0 : m - a[i] % m;
  return r;
}

bool poly_is_zero(const std::vector<u64>& a) {
  return std::all_of(a.begin(), a.end(), [](u64 v) { return v == 0; });
}

std::vector<u64> poly_pow(std::vector<u64> base, u128 e, u64 m, const std::vector<u64>& mod_c) {
  std::vector<u64> r(mod_c.size(), 0);
  r[0] = 1;
  std::vector<u64> tmp;
  while (e > 0) {
    if (e & 1) {
      poly_mul_reduce(r, base, tmp, m, mod_c);
      r = tmp;
    }
    poly_mul_reduce(base, base, tmp, m, mod_c);
    base = tmp;
    e >>= 1;
  }
  return r;
}

/* --- irreducibility over F_p (variable-degree polynomials) -------------- */

using vpoly = std::vector<u64>;  // coefficient list, index = degree, trimmed

void vtrim(vpoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

vpoly vmod(vpoly a, const vpoly& b, u64 p) {
  // b monic after normalization by caller
  vtrim(a);
  const size_t db = b.size() - 1;
  u64 lead_inv = invmod(b.back(), p);
  while (a.size() >= b.size()) {
    u64 q = mulmod(a.back(), lead_inv, p);
    size_t shift = a.size() - b.size();
    if (q) {
      for (size_t i = 0; i <= db; ++i) {
        a[shift + i] = submod(a[shift + i], mulmod(q, b[i], p), p);
      }
    }
    a.pop_back();
    vtrim(a);
    if (a.empty()) break;
  }
  return a;
}

vpoly vgcd(vpoly a, vpoly b, u64 p) {
  vtrim(a);
  vtrim(b);
  while (!b.empty()) {
    vpoly r = vmod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

vpoly vmulmod(const vpoly& a, const vpoly& b, const vpoly& f, u64 p) {
  vpoly conv(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      conv[i + j] = (conv[i + j] + (u128)a[i] * b[j]) % p;
    }
  }
  return vmod(std::move(conv), f, p);
}

vpoly vpowmod(vpoly base, u64 e, const vpoly& f, u64 p) {
  vpoly r{1};
  while (e > 0) {
    if (e & 1) r = vmulmod(r, base, f, p);
    base = vmulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

/* x^(p^i) mod f by iterating the p-th power map i times. */
vpoly frob_power(unsigned i, const vpoly& f, u64 p) {
  vpoly x{0, 1};
  for (unsigned k = 0; k < i; ++k) x = vpowmod(std::move(x), p, f, p);
  return x;
}

bool poly_has_root(const std::vector<u64>& low, u64 p) {
  // f = t^d + sum low[i] t^i; exhaustive root scan.
  const size_t d = low.size();
  if (low[0] == 0) return true;  // root at 0
  for (u64 x = 1; x < p; ++x) {
    u64 acc = 1;  // leading coefficient
    for (size_t i = d; i-- > 0;) acc = (mulmod(acc, x, p) + low[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

bool is_irreducible(const std::vector<u64>& low, u64 p) {
  const unsigned d = static_cast<unsigned>(low.size());
  if (d == 1) return true;
  if (d <= 3) return !poly_has_root(low, p);  // no root <=> irreducible for deg 2, 3
  // Rabin: x^(p^d) = x mod f, and gcd(x^(p^(d/q)) - x, f) = 1 for prime q | d.
  vpoly f(low.begin(), low.end());
  f.push_back(1);
  auto minus_x = [&](vpoly g) {
    g.resize(std::max<size_t>(g.size(), 2), 0);
    g[1] = submod(g[1], 1, p);
    vtrim(g);
    return g;
  };
  if (!minus_x(frob_power(d, f, p)).empty()) return false;
  std::vector<unsigned> qs;
  unsigned rem = d;
  for (unsigned q = 2; q * q <= rem; ++q) {
    if (rem % q == 0) {
      qs.push_back(q);
      while (rem % q == 0) rem /= q;
    }
  }
  if (rem > 1) qs.push_back(rem);
  for (unsigned q : qs) {
    vpoly g = minus_x(frob_power(d / q, f, p));
    if (g.empty() || vgcd(f, g, p).size() != 1) return false;
  }
  return true;
}

}  // namespace

ring_context find_modulus(u64 p, unsigned d) {
  if (d < 1) fail(errc::precondition_violated, "degree must be at least 1");
  if (p >= (1ull << 32)) fail(errc::too_large, "p^2 must fit in 64 bits");
  if (p < 3 || !is_prime(p)) fail(errc::composite_modulus, "p must be an odd prime");

  ring_context ctx;
  ctx.p = p;
  ctx.d = d;
  ctx.p2 = p * p;
  if (d == 1) {
    ctx.modulus = {0};  // trivial modulus t; the ring is Z/p^2
    return ctx;
  }

  // Candidates with c_0 = 0 are divisible by t; start the lex scan past them.
  std::vector<u64> c(d, 0);
  c[0] = 1;
  while (true) {
    if (is_irreducible(c, p)) {
      ctx.modulus = c;
      return ctx;
    }
    // lexicographic successor of (c_0, ..., c_{d-1})
    unsigned i = d;
    while (i-- > 0) {
      if (++c[i] < p) break;
      c[i] = 0;
      if (i == 0) fail(errc::composite_modulus, "no irreducible polynomial found");
    }
  }
}

/* --- element construction ----------------------------------------------- */

namespace {
std::vector<u64> const_vec(const ring_context& ctx, u64 v) {
  std::vector<u64> c(ctx.d, 0);
  c[0] = v;
  return c;
}
u64 reduce_int(i128 v, u64 m) {
  i128 r = v % static_cast<i128>(m);
  if (r < 0) r += static_cast<i128>(m);
  return static_cast<u64>(r);
}
}  // namespace

fp_element fp_zero(const ring_context& ctx) { return {&ctx, const_vec(ctx, 0)}; }
fp_element fp_one(const ring_context& ctx) { return {&ctx, const_vec(ctx, 1)}; }
fp_element fp_from_int(const ring_context& ctx, i128 v) {
  return {&ctx, const_vec(ctx, reduce_int(v, ctx.p))};
}
fp_element fp_from_coeffs(const ring_context& ctx, std::vector<u64> c) {
  if (c.size() != ctx.d) fail(errc::precondition_violated, "coefficient count != degree");
  for (u64& v : c) v %= ctx.p;
  return {&ctx, std::move(c)};
}

gr_element gr_zero(const ring_context& ctx) { return {&ctx, const_vec(ctx, 0)}; }
gr_element gr_one(const ring_context& ctx) { return {&ctx, const_vec(ctx, 1)}; }
gr_element gr_from_int(const ring_context& ctx, i128 v) {
  return {&ctx, const_vec(ctx, reduce_int(v, ctx.p2))};
}
gr_element gr_from_coeffs(const ring_context& ctx, std::vector<u64> c) {
  if (c.size() != ctx.d) fail(errc::precondition_violated, "coefficient count != degree");
  for (u64& v : c) v %= ctx.p2;
  return {&ctx, std::move(c)};
}

fp_element fp_from_index(const ring_context& ctx, u64 idx) {
  std::vector<u64> c(ctx.d);
  for (unsigned i = 0; i < ctx.d; ++i) {
    c[i] = idx % ctx.p;
    idx /= ctx.p;
  }
  return {&ctx, std::move(c)};
}

u64 fp_index(const fp_element& x) {
  u64 idx = 0;
  for (unsigned i = x.ctx->d; i-- > 0;) idx = idx * x.ctx->p + x.c[i];
  return idx;
}

/* --- arithmetic ---------------------------------------------------------- */

fp_element operator+(const fp_element& a, const fp_element& b) {
  require_same_context(*a.ctx, *b.ctx);
  return {a.ctx, poly_add(a.c, b.c, a.ctx->p)};
}
fp_element operator-(const fp_element& a, const fp_element& b) {
  require_same_context(*a.ctx, *b.ctx);
  return {a.ctx, poly_sub(a.c, b.c, a.ctx->p)};
}
fp_element operator-(const fp_element& a) { return {a.ctx, poly_neg(a.c, a.ctx->p)}; }
fp_element operator*(const fp_element& a, const fp_element& b) {
  require_same_context(*a.ctx, *b.ctx);
  std::vector<u64> out;
  poly_mul_reduce(a.c, b.c, out, a.ctx->p, a.ctx->modulus);
  return {a.ctx, std::move(out)};
}

gr_element operator+(const gr_element& a, const gr_element& b) {
  require_same_context(*a.ctx, *b.ctx);
  return {a.ctx, poly_add(a.c, b.c, a.ctx->p2)};
}
gr_element operator-(const gr_element& a, const gr_element& b) {
  require_same_context(*a.ctx, *b.ctx);
  return {a.ctx, poly_sub(a.c, b.c, a.ctx->p2)};
}
gr_element operator-(const gr_element& a) { return {a.ctx, poly_neg(a.c, a.ctx->p2)}; }
gr_element operator*(const gr_element& a, const gr_element& b) {
  require_same_context(*a.ctx, *b.ctx);
  std::vector<u64> out;
  poly_mul_reduce(a.c, b.c, out, a.ctx->p2, a.ctx->modulus);
  return {a.ctx, std::move(out)};
}

fp_element fp_pow(const fp_element& x, u128 e) {
  return {x.ctx, poly_pow(x.c, e, x.ctx->p, x.ctx->modulus)};
}
gr_element gr_pow(const gr_element& x, u128 e) {
  return {x.ctx, poly_pow(x.c, e, x.ctx->p2, x.ctx->modulus)};
}

bool is_zero(const fp_element& x) { return poly_is_zero(x.c); }
bool is_zero(const gr_element& x) { return poly_is_zero(x.c); }

bool is_unit(const fp_element& x) { return !is_zero(x); }
bool is_unit(const gr_element& x) {
  return std::any_of(x.c.begin(), x.c.end(), [&](u64 v) { return v % x.ctx->p != 0; });
}

fp_element invert(const fp_element& x) {
  if (!is_unit(x)) fail(errc::non_unit, "inverse of zero in the field");
  // x^(q-2); valid in any finite field.
  return fp_pow(x, x.ctx->q() - 2);
}

gr_element invert(const gr_element& x) {
  if (!is_unit(x)) fail(errc::non_unit, "inverse of a non-unit in GR(p^2, d)");
  fp_element r = invert(reduce_mod_p(x));
  gr_element z = lift(r);
  // Newton: z <- z(2 - xz) doubles the precision, one step reaches p^2.
  gr_element two = gr_from_int(*x.ctx, 2);
  return z * (two - x * z);
}

fp_element reduce_mod_p(const gr_element& x) {
  std::vector<u64> c(x.ctx->d);
  for (unsigned i = 0; i < x.ctx->d; ++i) c[i] = x.c[i] % x.ctx->p;
  return {x.ctx, std::move(c)};
}

gr_element lift(const fp_element& x) { return {x.ctx, x.c}; }

std::optional<fp_element> sqrt_in_field(const fp_element& x) {
  const ring_context& ctx = *x.ctx;
  if (is_zero(x)) return x;
  const u128 q = ctx.q();
  fp_element ls = fp_pow(x, (q - 1) / 2);
  if (ls != fp_one(ctx)) return std::nullopt;

  fp_element y = fp_zero(ctx);
  if (q % 4 == 3) {
    y = fp_pow(x, (q + 1) / 4);
  } else {
    // Tonelli-Shanks in F_q with a deterministic non-residue scan.
    u128 m = q - 1;
    unsigned s = 0;
    while ((m & 1) == 0) m >>= 1, ++s;
    fp_element z = fp_zero(ctx);
    for (u64 idx = 1;; ++idx) {
      z = fp_from_index(ctx, idx);
      if (fp_pow(z, (q - 1) / 2) == -fp_one(ctx)) break;
    }
    fp_element cc = fp_pow(z, m);
    fp_element t = fp_pow(x, m);
    fp_element r = fp_pow(x, (m + 1) / 2);
    unsigned v = s;
    while (t != fp_one(ctx)) {
      fp_element t2 = t;
      unsigned i = 0;
      while (t2 != fp_one(ctx)) {
        t2 = t2 * t2;
        ++i;
      }
      fp_element b = cc;
      for (unsigned j = 0; j + i + 1 < v; ++j) b = b * b;
      r = r * b;
      cc = b * b;
      t = t * cc;
      v = i;
    }
    y = r;
  }
  fp_element yn = -y;
  return std::lexicographical_compare(y.c.begin(), y.c.end(), yn.c.begin(), yn.c.end()) ? y : yn;
}

namespace {
gr_element eval_poly(const std::vector<gr_element>& f, const gr_element& x) {
  gr_element acc = gr_zero(*x.ctx);
  for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}
}  // namespace

gr_element hensel_lift_root(const std::vector<gr_element>& f, const fp_element& r) {
  if (f.empty()) fail(errc::precondition_violated, "empty polynomial");
  const ring_context& ctx = *r.ctx;
  require_same_context(*f[0].ctx, ctx);
  gr_element r0 = lift(r);
  gr_element fr = eval_poly(f, r0);
  if (!is_zero(reduce_mod_p(fr))) {
    fail(errc::precondition_violated, "r is not a root of f mod p");
  }
  std::vector<gr_element> df;
  for (size_t i = 1; i < f.size(); ++i) df.push_back(gr_from_int(ctx, (i128)i) * f[i]);
  if (df.empty()) fail(errc::singular_root, "derivative vanishes identically");
  gr_element dfr = eval_poly(df, r0);
  if (!is_unit(dfr)) fail(errc::singular_root, "f'(r) is not a unit");
  gr_element lifted = r0 - fr * invert(dfr);
  // One Newton step from an exact root mod p is exact mod p^2.
  if (!is_zero(eval_poly(f, lifted))) {
    fail(errc::ladder_invariant_violated, "Newton step failed to reach an exact root");
  }
  return lifted;
}

std::string to_string(const fp_element& x) {
  std::ostringstream os;
  for (unsigned i = 0; i < x.ctx->d; ++i) {
    if (i) os << " + ";
    os << x.c[i];
    if (i == 1) os << "*t";
    if (i > 1) os << "*t^" << i;
  }
  return os.str();
}

std::string to_string(const gr_element& x) {
  std::ostringstream os;
  for (unsigned i = 0; i < x.ctx->d; ++i) {
    if (i) os << " + ";
    os << x.c[i];
    if (i == 1) os << "*t";
    if (i > 1) os << "*t^" << i;
  }
  return os.str();
}

}  // namespace loctor
