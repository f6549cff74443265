#include "loctor/lifttest.hpp"

#include <thread>

namespace loctor {

namespace {

bool unit_disc(u64 p, u64 a, u64 b) {
  u64 s = addmod(mulmod(4 % p, mulmod(a, mulmod(a, a, p), p), p),
                 mulmod(27 % p, mulmod(b, b, p), p), p);
  return s != 0;
}

/* The per-lift half of the test: Q is a point of order p on the reduction,
 * shared across all lifts of one residue pair. */
bool lift_passes(const gr_curve& Ehat, const fp_point& Q) {
  const ring_context& ctx = *Ehat.ctx;
  gr_element xt = lift(Q.x);
  gr_element rhs = (xt * xt + Ehat.a) * xt + Ehat.b;
  std::vector<gr_element> f = {-rhs, gr_zero(ctx), gr_one(ctx)};  // Y^2 - rhs
  gr_element yt = hensel_lift_root(f, Q.y);
  gr_point R = scalar_mul(Ehat, ctx.p - 1, make_gr_point(xt, yt));
  return R == make_gr_point(xt, -yt);
}

/* Screen (trace test) plus order-p point for one residue pair; nullopt if
 * no lift can pass. */
std::optional<fp_point> screened_order_p_point(const ring_context& ctx, u64 a, u64 b) {
  i64 ap = ap_auto_raw(ctx.p, a, b);
  if (!has_p_torsion_over_ext(ap, ctx.p, ctx.d)) return std::nullopt;
  return find_point_of_order_p(make_fp_curve(ctx, (i128)a, (i128)b));
}

unsigned worker_count(unsigned requested, u64 shards) {
  unsigned n = requested ? requested : std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if ((u64)n > shards) n = (unsigned)shards;
  return n;
}

}  // namespace

bool canonical_lift_test(const ring_context& ctx, u64 A, u64 B) {
  u64 p = ctx.p;
  if (p < 5) fail(errc::small_prime, "the lift criterion needs p >= 5");
  A %= ctx.p2;
  B %= ctx.p2;
  u64 a = A % p, b = B % p;
  if (!unit_disc(p, a, b)) fail(errc::singular_curve, "reduction mod p is singular");
  auto Q = screened_order_p_point(ctx, a, b);
  if (!Q) return false;
  return lift_passes(make_gr_curve(ctx, (i128)A, (i128)B), *Q);
}

bool canonical_lift_test(u64 A, u64 B, u64 p, unsigned d) {
  if (p < 5) fail(errc::small_prime, "the lift criterion needs p >= 5");
  ring_context ctx = find_modulus(p, d);
  return canonical_lift_test(ctx, A, B);
}

unsigned local_p_rank(const ring_context& ctx, u64 A, u64 B) {
  return ctx.d + (canonical_lift_test(ctx, A, B) ? 1 : 0);
}

unsigned local_p_rank(u64 A, u64 B, u64 p, unsigned d) {
  if (p < 5) fail(errc::small_prime, "the lift criterion needs p >= 5");
  ring_context ctx = find_modulus(p, d);
  return local_p_rank(ctx, A, B);
}

std::vector<std::pair<u64, u64>> lifts_with_rank(u64 a, u64 b, u64 p, unsigned d,
                                                 unsigned threads) {
  if (p < 5) fail(errc::small_prime, "the lift criterion needs p >= 5");
  a %= p;
  b %= p;
  if (!unit_disc(p, a, b)) fail(errc::precondition_violated, "residue curve is singular");
  if (a == 0 || b == 0) {
    fail(errc::precondition_violated, "exceptional j-invariant (j = 0 or 1728)");
  }
  i64 ap = ap_auto_raw(p, a, b);
  if (((ap % (i64)p) + (i64)p) % (i64)p == 0) {
    fail(errc::precondition_violated, "supersingular reduction");
  }
  if (!has_p_torsion_over_ext(ap, p, d)) {
    fail(errc::precondition_violated, "no p-torsion over the degree-d extension");
  }
  ring_context ctx = find_modulus(p, d);
  fp_point Q = find_point_of_order_p(make_fp_curve(ctx, (i128)a, (i128)b));

  std::vector<char> passes(p * p, 0);
  unsigned nt = worker_count(threads, p);
  auto shard = [&](unsigned w) {
    for (u64 i = w; i < p; i += nt) {
      for (u64 j = 0; j < p; ++j) {
        gr_curve Ehat = make_gr_curve(ctx, (i128)(a + p * i), (i128)(b + p * j));
        passes[i * p + j] = lift_passes(Ehat, Q) ? 1 : 0;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < nt; ++w) pool.emplace_back(shard, w);
  shard(0);
  for (auto& t : pool) t.join();

  std::vector<std::pair<u64, u64>> out;
  for (u64 i = 0; i < p; ++i) {
    for (u64 j = 0; j < p; ++j) {
      if (passes[i * p + j]) out.emplace_back(a + p * i, b + p * j);
    }
  }
  return out;
}

nu_record nu_brute(u64 p, unsigned d, unsigned threads, u64 p_budget) {
  if (p < 5) fail(errc::small_prime, "nu is defined for p >= 5");
  if (!is_prime(p)) fail(errc::not_prime, "nu is indexed by primes");
  if (p > p_budget) fail(errc::budget_exceeded, "p^4 enumeration over budget");
  ring_context ctx = find_modulus(p, d);

  unsigned nt = worker_count(threads, p);
  std::vector<nu_record> parts(nt);
  auto shard = [&](unsigned w) {
    nu_record& rec = parts[w];
    for (u64 a = w; a < p; a += nt) {
      for (u64 b = 0; b < p; ++b) {
        if (!unit_disc(p, a, b)) continue;
        auto Q = screened_order_p_point(ctx, a, b);
        if (!Q) continue;
        u64 hits = 0;
        for (u64 i = 0; i < p; ++i) {
          for (u64 j = 0; j < p; ++j) {
            gr_curve Ehat = make_gr_curve(ctx, (i128)(a + p * i), (i128)(b + p * j));
            if (lift_passes(Ehat, *Q)) ++hits;
          }
        }
        if (a == 0) {
          rec.nu_0 += hits;
        } else if (b == 0) {
          rec.nu_1728 += hits;
        } else {
          rec.nu_prime += hits;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < nt; ++w) pool.emplace_back(shard, w);
  shard(0);
  for (auto& t : pool) t.join();

  nu_record total{p, d, 0, 0, 0, 0, p * p * p * p};
  for (const nu_record& part : parts) {
    total.nu_prime += part.nu_prime;
    total.nu_0 += part.nu_0;
    total.nu_1728 += part.nu_1728;
  }
  total.nu = total.nu_prime + total.nu_0 + total.nu_1728;
  return total;
}

deuring_check verify_deuring(u64 p, i64 r) {
  if (p < 5) fail(errc::small_prime, "trace counts need p >= 5");
  if (!is_prime(p)) fail(errc::not_prime, "trace counts need a prime modulus");
  if (r == 0 || (u64)(r * r) >= 4 * p) {
    fail(errc::precondition_violated, "trace must be nonzero and inside the Hasse bound");
  }
  deuring_check out;
  out.p = p;
  out.r = r;
  out.six_h = hurwitz_six(4 * p - (u64)(r * r));
  for (u64 a = 0; a < p; ++a) {
    for (u64 b = 0; b < p; ++b) {
      if (!unit_disc(p, a, b)) continue;
      if (ap_charsum_raw(p, a, b) != r) continue;
      ++out.count_all;
      if (a != 0 && b != 0) ++out.count_ab_nonzero;
    }
  }
  out.identity_holds = (12 * out.count_all == (p - 1) * out.six_h);
  return out;
}

}  // namespace loctor
