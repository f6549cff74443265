#include "loctor/counting.hpp"

#include <numeric>
#include <unordered_map>
#include <vector>

#include "loctor/rng.hpp"

namespace loctor {

i64 ap_charsum_raw(u64 p, u64 a, u64 b) {
  if (p == 2) fail(errc::precondition_violated, "character sum needs an odd prime");
  if (!is_prime(p)) fail(errc::not_prime, "character sum needs a prime modulus");
  a %= p;
  b %= p;
  u64 sing = addmod(mulmod(4 % p, mulmod(a, mulmod(a, a, p), p), p),
                    mulmod(27 % p, mulmod(b, b, p), p), p);
  if (sing == 0) fail(errc::singular_curve, "4a^3 + 27b^2 = 0 mod p");

  // leg[v] = chi(v): 0 at 0, 1 on squares, -1 otherwise
  std::vector<signed char> leg(p, -1);
  leg[0] = 0;
  for (u64 i = 1; i <= (p - 1) / 2; ++i) leg[(i * i) % p] = 1;

  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) {
    u64 rhs = addmod(addmod(mulmod(mulmod(x, x, p), x, p), mulmod(a, x, p), p), b, p);
    sum += leg[rhs];
  }
  return -sum;
}

namespace {

void require_prime_field(const fp_curve& E, const char* who) {
  if (E.ctx->d != 1) fail(errc::precondition_violated, who);
}

u64 coeff0(const fp_element& x) { return x.c[0]; }

u64 point_key(const fp_point& P) {  // affine only; coordinates < p < 2^32
  return (coeff0(P.x) << 32) | coeff0(P.y);
}

/* Smallest k in [lo, hi] with [k]P = O, by baby-step giant-step.  P has
 * order dividing the group order, which lies in [lo, hi], so a kill always
 * exists. */
u64 smallest_kill(const fp_curve& E, const fp_point& P, u64 lo, u64 hi) {
  u64 w = hi - lo + 1;
  u64 s = isqrt(w);
  while (s * s < w) ++s;

  std::unordered_map<u64, u64> baby;  // key([j]P) -> least j, 1 <= j < s
  baby.reserve(2 * s);
  fp_point walk = P;
  for (u64 j = 1; j < s; ++j) {
    if (walk.inf) break;  // ord(P) = j < s; keys for larger j repeat
    baby.emplace(point_key(walk), j);
    walk = ec_add(E, walk, P);
  }

  fp_point stride = scalar_mul(E, s, P);
  fp_point C = scalar_mul(E, lo, P);  // [lo + i s]P
  for (u64 start = lo; start <= hi; start += s) {
    if (C.inf) return start;  // j = 0
    auto it = baby.find(point_key(ec_neg(C)));
    if (it != baby.end()) {
      u64 k = start + it->second;
      if (k <= hi) return k;
    }
    C = ec_add(E, C, stride);
  }
  fail(errc::ladder_invariant_violated, "no annihilator in the Hasse interval");
}

u64 exact_order(const fp_curve& E, const fp_point& P, u64 multiple) {
  std::vector<u64> primes;
  u64 m = multiple;
  for (u64 q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      primes.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) primes.push_back(m);
  u64 ord = multiple;
  for (u64 q : primes) {
    while (ord % q == 0 && scalar_mul(E, ord / q, P).inf) ord /= q;
  }
  return ord;
}

}  // namespace

trace_data ap_charsum(const fp_curve& E) {
  require_prime_field(E, "character sum counts over the prime field only");
  u64 p = E.ctx->p;
  return {p, ap_charsum_raw(p, coeff0(E.a), coeff0(E.b)), trace_method::charsum};
}

trace_data ap_bsgs(const fp_curve& E) {
  require_prime_field(E, "order finding counts over the prime field only");
  const ring_context& ctx = *E.ctx;
  u64 p = ctx.p;
  if (p < 229) {
    // Below this the interval is dense with competing orders and the
    // uniqueness argument fails; the character sum is instant anyway.
    fail(errc::precondition_violated, "order finding needs p >= 229");
  }
  if (is_singular(E)) fail(errc::singular_curve, "4a^3 + 27b^2 = 0 mod p");

  u64 a = coeff0(E.a), b = coeff0(E.b);
  u64 c = 2;
  while (powmod(c, (p - 1) / 2, p) != p - 1) ++c;
  u64 c2 = mulmod(c, c, p);
  // quadratic twist: trace on it is -a_p
  fp_curve T = make_fp_curve(ctx, (i128)mulmod(a, c2, p), (i128)mulmod(b, mulmod(c2, c, p), p));

  u64 r = isqrt(4 * p);  // |t| <= floor(2 sqrt p)
  u64 lo = p + 1 - r, hi = p + 1 + r;

  u64 LE = 1, LT = 1;  // known divisors of #E(F_p), #T(F_p)
  rng64 gen(seed_from(p, 1, a, b));
  for (int iter = 0; iter < 40; ++iter) {
    bool on_base = (iter % 2 == 0);
    const fp_curve& C = on_base ? E : T;
    std::optional<fp_point> P;
    for (int tries = 0; tries < 256 && !P; ++tries) {
      P = lift_x(C, fp_from_int(ctx, (i128)gen.below(p)));
    }
    if (!P) continue;
    u64 ord = exact_order(C, *P, smallest_kill(C, *P, lo, hi));
    u64& L = on_base ? LE : LT;
    L = std::lcm(L, ord);

    // N in [lo, hi] with LE | N and LT | 2p + 2 - N; exactly one means done
    u64 hits = 0, N_hit = 0;
    for (u64 N = ((lo + LE - 1) / LE) * LE; N <= hi; N += LE) {
      if ((2 * p + 2 - N) % LT == 0) {
        ++hits;
        N_hit = N;
        if (hits > 1) break;
      }
    }
    if (hits == 1) return {p, (i64)(p + 1) - (i64)N_hit, trace_method::bsgs};
  }
  fail(errc::ambiguous_order, "group order not pinned down within the sample budget");
}

trace_data ap_auto(const fp_curve& E, u64 threshold) {
  if (E.ctx->p <= threshold || E.ctx->p < 229) return ap_charsum(E);
  try {
    return ap_bsgs(E);
  } catch (const error& e) {
    if (e.kind() != errc::ambiguous_order) throw;
    return ap_charsum(E);
  }
}

i64 ap_auto_raw(u64 p, u64 a, u64 b, u64 threshold) {
  if (p <= threshold || p < 229) return ap_charsum_raw(p, a, b);
  ring_context ctx = find_modulus(p, 1);
  return ap_auto(make_fp_curve(ctx, (i128)(a % p), (i128)(b % p)), threshold).ap;
}

i128 trace_power(i64 ap, u64 p, unsigned d) {
  if (d > 40) fail(errc::too_large, "extension degree out of range");
  i128 prev = 2, cur = ap;
  if (d == 0) return prev;
  for (unsigned m = 2; m <= d; ++m) {
    i128 next = (i128)ap * cur - (i128)p * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

u128 count_over_ext(i64 ap, u64 p, unsigned d) {
  if (d == 0) fail(errc::precondition_violated, "degree must be positive");
  u128 pw = 1;
  const u128 cap = ~(u128)0;
  for (unsigned i = 0; i < d; ++i) {
    if (pw > cap / p) fail(errc::too_large, "p^d exceeds 128 bits");
    pw *= p;
  }
  i128 n = (i128)pw + 1 - trace_power(ap, p, d);
  return (u128)n;
}

bool has_p_torsion_over_ext(i64 ap, u64 p, unsigned d) {
  u64 r = (u64)(((ap % (i64)p) + (i64)p) % (i64)p);
  if (r == 0) return false;
  return powmod(r, d, p) == 1;
}

fp_point find_point_of_order_p(const fp_curve& E) {
  const ring_context& ctx = *E.ctx;
  u64 p = ctx.p;
  unsigned d = ctx.d;
  for (unsigned i = 1; i < d; ++i) {
    if (E.a.c[i] != 0 || E.b.c[i] != 0) {
      fail(errc::precondition_violated, "curve must have prime-field coefficients");
    }
  }
  u64 a = coeff0(E.a), b = coeff0(E.b);
  i64 ap = ap_auto_raw(p, a, b);
  if (!has_p_torsion_over_ext(ap, p, d)) {
    fail(errc::no_p_torsion, "no point of order p over this extension");
  }
  u128 M = count_over_ext(ap, p, d);
  while (M % p == 0) M /= p;  // prime-to-p part of the group order

  rng64 gen(seed_from(p, d, a, b));
  u64 budget = 64 * p;
  std::vector<u64> coords(d);
  for (u64 sample = 0; sample < budget; ++sample) {
    for (unsigned i = 0; i < d; ++i) coords[i] = gen.below(p);
    auto P = lift_x(E, fp_from_coeffs(ctx, coords));
    if (!P) continue;
    fp_point S = scalar_mul(E, M, *P);  // now in the p-primary part
    if (S.inf) continue;
    for (;;) {
      fp_point next = scalar_mul(E, p, S);
      if (next.inf) break;
      S = next;
    }
    return S;  // [p]S = O, S != O
  }
  fail(errc::sample_exhausted, "no point of order p found within the sample budget");
}

}  // namespace loctor
