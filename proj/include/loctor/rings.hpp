#pragma once

/*
 * Exact arithmetic in F_{p^d} and in the Galois ring
 *
 *     GR(p^2, d) = (Z/p^2)[t] / (f~)
 *
 * where f~ is the coefficientwise lift of a monic irreducible f of degree d
 * over F_p.  GR(p^2, d) is the length-two Witt vector ring W_2(F_{p^d}) of
 * the residue field of the unramified degree-d extension of Q_p.
 *
 * A ring_context fixes (p, d, f).  Elements are coefficient vectors of
 * length d relative to one context: fp_element coefficients live in [0, p),
 * gr_element coefficients in [0, p^2).  Reduction mod p is coefficientwise,
 * as is the distinguished (non-multiplicative) section lift().
 *
 * Coefficients are machine words; p^2 must fit in 64 bits, so p < 2^32.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loctor/errors.hpp"
#include "loctor/primes.hpp"

namespace loctor {

struct ring_context {
  u64 p = 0;     // odd prime
  unsigned d = 1;
  u64 p2 = 0;    // p * p
  std::vector<u64> modulus;  // low d coefficients of the monic modulus, in [0, p)

  bool operator==(const ring_context&) const = default;

  u128 q() const {  // p^d
    u128 r = 1;
    for (unsigned i = 0; i < d; ++i) r *= p;
    return r;
  }
};

/* First monic irreducible of degree d over F_p in ascending lexicographic
 * order of the coefficient vector (c_0, ..., c_{d-1}), lifted
 * coefficientwise.  Deterministic in (p, d). */
ring_context find_modulus(u64 p, unsigned d);

struct fp_element {
  const ring_context* ctx = nullptr;
  std::vector<u64> c;

  bool operator==(const fp_element& o) const { return *ctx == *o.ctx && c == o.c; }
  bool operator!=(const fp_element& o) const { return !(*this == o); }
};

struct gr_element {
  const ring_context* ctx = nullptr;
  std::vector<u64> c;

  bool operator==(const gr_element& o) const { return *ctx == *o.ctx && c == o.c; }
  bool operator!=(const gr_element& o) const { return !(*this == o); }
};

/* --- construction ------------------------------------------------------ */

fp_element fp_zero(const ring_context& ctx);
fp_element fp_one(const ring_context& ctx);
fp_element fp_from_int(const ring_context& ctx, i128 v);  // constant embed
fp_element fp_from_coeffs(const ring_context& ctx, std::vector<u64> c);

gr_element gr_zero(const ring_context& ctx);
gr_element gr_one(const ring_context& ctx);
gr_element gr_from_int(const ring_context& ctx, i128 v);
gr_element gr_from_coeffs(const ring_context& ctx, std::vector<u64> c);

/* Index <-> element bijection, index = sum c_i p^i.  Used for deterministic
 * scans and test-side tables; requires p^d to fit u64. */
fp_element fp_from_index(const ring_context& ctx, u64 idx);
u64 fp_index(const fp_element& x);

/* --- arithmetic --------------------------------------------------------- */

fp_element operator+(const fp_element& a, const fp_element& b);
fp_element operator-(const fp_element& a, const fp_element& b);
fp_element operator*(const fp_element& a, const fp_element& b);
fp_element operator-(const fp_element& a);

gr_element operator+(const gr_element& a, const gr_element& b);
gr_element operator-(const gr_element& a, const gr_element& b);
gr_element operator*(const gr_element& a, const gr_element& b);
gr_element operator-(const gr_element& a);

fp_element fp_pow(const fp_element& x, u128 e);
gr_element gr_pow(const gr_element& x, u128 e);

bool is_zero(const fp_element& x);
bool is_zero(const gr_element& x);

/* Unit test: an fp_element is a unit iff nonzero; a gr_element iff its
 * reduction mod p is nonzero. */
bool is_unit(const fp_element& x);
bool is_unit(const gr_element& x);

/* Inverse of a unit.  Throws non_unit otherwise.  The GR inverse is the
 * field inverse of the reduction followed by one Newton step mod p^2. */
fp_element invert(const fp_element& x);
gr_element invert(const gr_element& x);

/* --- moving between the ring and its residue field ---------------------- */

fp_element reduce_mod_p(const gr_element& x);
gr_element lift(const fp_element& x);  // coefficientwise, canonical section

/* --- roots -------------------------------------------------------------- */

/* Deterministic square root in F_{p^d}: returns the lexicographically
 * smaller of {y, -y} (coefficient vectors compared as tuples), or nullopt
 * for a non-square.  sqrt(0) = 0. */
std::optional<fp_element> sqrt_in_field(const fp_element& x);

/* One Newton step lifting a simple root r of f mod p to the unique root of
 * f in GR(p^2, d) congruent to r.  f is given by its coefficients, index =
 * degree.  Throws singular_root when f'(r) is not a unit,
 * precondition_violated when f(r) != 0 mod p. */
gr_element hensel_lift_root(const std::vector<gr_element>& f, const fp_element& r);

std::string to_string(const fp_element& x);
std::string to_string(const gr_element& x);

/* Shared-context guard used by all binary operations. */
void require_same_context(const ring_context& a, const ring_context& b);

}  // namespace loctor
