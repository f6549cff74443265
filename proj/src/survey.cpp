#include "loctor/survey.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "loctor/counting.hpp"
#include "loctor/padic.hpp"
#include "loctor/primes.hpp"
#include "loctor/rng.hpp"

namespace loctor {

namespace {

unsigned worker_count(unsigned requested) {
  if (requested) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/* body(i) for i in [0, n), sharded over workers; body must only touch
 * its own index's slots */
template <class F>
void parallel_index(std::size_t n, unsigned threads, F body) {
  unsigned w = worker_count(threads);
  if (w <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  if (w > n) w = (unsigned)n;
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mx;
  for (unsigned t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += w) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mx);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

enum class outcome_kind { absent, found_lift, found_divpoly, undetermined };

struct prime_outcome {
  outcome_kind kind = outcome_kind::absent;
  std::string reason;
};

/* short model mod p^2, the same substitution reduce_mod_p applies */
void short_coeffs_mod_p2(const general_curve& E, u64 p, u64& A, u64& B) {
  u64 p2 = p * p;
  A = mod_u64(-27 * E.c4(), p2);
  B = mod_u64(-54 * E.c6(), p2);
}

prime_outcome classify_prime(const general_curve& E, u64 p, unsigned d,
                             bool all_degrees) {
  bool good = has_good_reduction(E, p);
  if (p >= 5 && good) {
    ring_context ctx = find_modulus(p, 1);
    trace_data t = ap_auto(reduce_mod_p(E, ctx));
    u64 ap_mod = (u64)(((t.ap % (i64)p) + (i64)p) % (i64)p);
    if (ap_mod != 0) {
      u64 e = mult_order(ap_mod, p);
      if (e <= d) {
        u64 A, B;
        short_coeffs_mod_p2(E, p, A, B);
        bool ok = canonical_lift_test(A, B, p, (unsigned)e);
        if (all_degrees) {
          for (u64 e2 = 2 * e; e2 <= d; e2 += e)
            if (canonical_lift_test(A, B, p, (unsigned)e2) != ok)
              fail(errc::ladder_invariant_violated,
                   "verdict changed between unramified degrees");
        }
        if (ok) return {outcome_kind::found_lift, {}};
      }
    }
    if (p <= d) return {outcome_kind::undetermined, "p<=d-ramified"};
    return {};
  }

  // p in {2, 3} or bad reduction: decide degree 1 by division polynomial;
  // torsion over Q_p itself counts for every d
  if (p <= 7) {
    torsion_verdict v = small_prime_local_torsion_auto(E, p);
    if (v.answer == torsion_answer::yes)
      return {outcome_kind::found_divpoly, {}};
    if (d == 1) {
      if (v.answer == torsion_answer::no) return {};
      return {outcome_kind::undetermined, "inconclusive-precision"};
    }
    if (p <= d) return {outcome_kind::undetermined, "p<=d-ramified"};
    if (!good) return {outcome_kind::undetermined, "bad-reduction-d>=2"};
    return {outcome_kind::undetermined, "small-prime-d>=2"};
  }
  if (d == 1) return {outcome_kind::undetermined, "bad-reduction-p>7"};
  return {outcome_kind::undetermined, "bad-reduction-d>=2"};
}

void check_scan_args(const general_curve& E, u64 x_max, unsigned d,
                     unsigned d_cap) {
  if (E.disc() == 0) fail(errc::singular_curve, "discriminant is zero");
  if (x_max < 2 || x_max > 4000000000ULL)
    fail(errc::precondition_violated, "x_max out of range");
  if (d < 1 || d > std::min(d_cap, 6u))
    fail(errc::precondition_violated, "degree out of range");
}

}  // namespace

local_torsion_report local_torsion_primes(const general_curve& E,
                                          const std::string& label, u64 x_max,
                                          unsigned d,
                                          const torsion_scan_options& opt) {
  check_scan_args(E, x_max, d, opt.d_cap);
  std::vector<u64> primes = primes_up_to(x_max);
  std::vector<prime_outcome> slots(primes.size());
  parallel_index(primes.size(), opt.threads, [&](std::size_t i) {
    slots[i] = classify_prime(E, primes[i], d, opt.all_degrees);
  });

  local_torsion_report r;
  r.label = label;
  r.x_max = x_max;
  r.d = d;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    switch (slots[i].kind) {
      case outcome_kind::found_lift:
        r.found.push_back({primes[i], "lift-test"});
        break;
      case outcome_kind::found_divpoly:
        r.found.push_back({primes[i], "division-poly"});
        break;
      case outcome_kind::undetermined:
        r.undetermined.push_back({primes[i], slots[i].reason});
        break;
      case outcome_kind::absent:
        break;
    }
  }
  return r;
}

cf_report pi_cf(const general_curve& E, u64 x_max, unsigned threads) {
  if (E.disc() == 0) fail(errc::singular_curve, "discriminant is zero");
  if (x_max < 7 || x_max > 4000000000ULL)
    fail(errc::precondition_violated, "x_max out of range");
  std::vector<u64> primes = primes_up_to(x_max);
  std::vector<char> hit(primes.size(), 0);
  parallel_index(primes.size(), threads, [&](std::size_t i) {
    u64 p = primes[i];
    if (p < 7 || !has_good_reduction(E, p)) return;
    ring_context ctx = find_modulus(p, 1);
    trace_data t = ap_auto(reduce_mod_p(E, ctx));
    if (t.ap != 1 && t.ap != -1) return;
    unsigned e = t.ap == 1 ? 1 : 2;
    u64 A, B;
    short_coeffs_mod_p2(E, p, A, B);
    if (canonical_lift_test(A, B, p, e)) hit[i] = 1;
  });
  cf_report r;
  r.x_max = x_max;
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (hit[i]) r.primes.push_back(primes[i]);
  return r;
}

bigrational sweep_report::average() const {
  if (curve_count == 0) return 0;
  return bigrational(bigint(pi_total), bigint(curve_count));
}

sweep_report sweep(i64 A, i64 B, u64 x_max, unsigned d,
                   const sweep_options& opt) {
  if (A < 0 || B < 0) fail(errc::precondition_violated, "negative bound");
  if (x_max < 2 || d < 1 || d > 4)
    fail(errc::precondition_violated, "x_max or degree out of range");

  u128 box = (u128)(2 * A + 1) * (u128)(2 * B + 1);
  std::vector<std::pair<i64, i64>> pairs;
  if (opt.sample != 0 && (u128)opt.sample < box) {
    rng64 gen(seed_from((u64)A, (u64)B, x_max, ((u64)d << 32) | opt.sample));
    std::set<std::pair<i64, i64>> chosen;
    while (chosen.size() < opt.sample) {
      i64 a = (i64)gen.below(2 * (u64)A + 1) - A;
      i64 b = (i64)gen.below(2 * (u64)B + 1) - B;
      chosen.insert({a, b});
    }
    pairs.assign(chosen.begin(), chosen.end());
  } else {
    if (4 * (u128)A * (u128)B > opt.budget || box > 4 * (u128)opt.budget + 1)
      fail(errc::budget_exceeded,
           "exhaustive family exceeds the budget; use sampling");
    for (i64 a = -A; a <= A; ++a)
      for (i64 b = -B; b <= B; ++b) pairs.push_back({a, b});
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& l, const auto& r) {
    auto key = [](const std::pair<i64, i64>& q) {
      return std::tuple(std::llabs(q.first), q.first, std::llabs(q.second),
                        q.second);
    };
    return key(l) < key(r);
  });

  std::vector<int> pi_slot(pairs.size(), -1);  // -1: singular
  std::vector<std::vector<undetermined_prime>> undet_slot(pairs.size());
  torsion_scan_options scan;
  scan.threads = 1;
  parallel_index(pairs.size(), opt.threads, [&](std::size_t i) {
    auto [a, b] = pairs[i];
    if (4 * (i128)a * a * a + 27 * (i128)b * b == 0) return;
    general_curve E{0, 0, 0, a, b};
    local_torsion_report rep = local_torsion_primes(E, "", x_max, d, scan);
    pi_slot[i] = (int)rep.found.size();
    undet_slot[i] = std::move(rep.undetermined);
  });

  sweep_report r;
  r.bound_a = A;
  r.bound_b = B;
  r.x_max = x_max;
  r.d = d;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pi_slot[i] < 0) {
      ++r.singular_skipped;
      continue;
    }
    u64 pi = (u64)pi_slot[i];
    r.rows.push_back({pairs[i].first, pairs[i].second, pi});
    ++r.curve_count;
    r.pi_total += pi;
    ++r.histogram[pi];
    for (const undetermined_prime& u : undet_slot[i])
      ++r.undetermined_tally[u.reason];
  }
  if (r.curve_count == 0)
    fail(errc::empty_family, "no nonsingular curve in the family");
  return r;
}

double heuristic_sum(u64 x_max) {
  double sum = 0, carry = 0;
  for (u64 p : primes_up_to(x_max)) {
    double term = 0.25 / ((double)p * std::sqrt((double)p));
    double y = term - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::pair<bigint, bigint> construct_curve(const std::vector<u64>& target_primes) {
  if (target_primes.empty() || target_primes.size() > 8)
    fail(errc::precondition_violated, "need between 1 and 8 target primes");
  for (u64 p : target_primes) {
    if (!is_prime(p)) fail(errc::not_prime, "target is not prime");
    if (p < 5) fail(errc::small_prime, "targets must be at least 5");
    if (p > 1000) fail(errc::budget_exceeded, "target prime above 1000");
  }
  std::set<u64> distinct(target_primes.begin(), target_primes.end());
  if (distinct.size() != target_primes.size())
    fail(errc::precondition_violated, "target primes must be distinct");

  bigint X = 0, Y = 0, M = 1;
  u64 x_verify = 2;
  for (u64 p : target_primes) {
    x_verify = std::max(x_verify, p);
    // first residue curve with exactly p points, then its first passing lift
    u64 Ap = 0, Bp = 0;
    bool got = false;
    for (u64 a = 1; a < p && !got; ++a) {
      for (u64 b = 1; b < p && !got; ++b) {
        if ((4 * a % p * a % p * a + 27 * b % p * b) % p == 0) continue;
        if (ap_charsum_raw(p, a, b) != 1) continue;
        auto lifts = lifts_with_rank(a, b, p, 1);
        Ap = lifts.front().first;
        Bp = lifts.front().second;
        got = true;
      }
    }
    if (!got) {
      // exceptional-j fallback: one coefficient is zero on every trace-1
      // curve; the passing lifts then preserve that zero mod p^2
      for (u64 c = 1; c < p && !got; ++c) {
        for (auto [a, b] : {std::pair<u64, u64>{0, c}, {c, 0}}) {
          if (ap_charsum_raw(p, a, b) != 1) continue;
          if (canonical_lift_test(a, b, p, 1)) {
            Ap = a;
            Bp = b;
            got = true;
            break;
          }
        }
      }
    }
    if (!got)
      fail(errc::no_target_curve, "no residue curve with a full point count");

    u64 p2 = p * p;
    // CRT: X = Ap, Y = Bp mod p^2 while keeping X, Y mod M
    u64 m_inv = invmod(mod_u64(M, p2), p2);
    X += M * ((mod_u64(bigint(Ap) - X, p2) * m_inv) % p2);
    Y += M * ((mod_u64(bigint(Bp) - Y, p2) * m_inv) % p2);
    M *= p2;
  }

  general_curve E{0, 0, 0, X, Y};
  local_torsion_report check = local_torsion_primes(E, "", x_verify, 1);
  for (u64 p : target_primes) {
    bool hit = std::any_of(check.found.begin(), check.found.end(),
                           [p](const found_prime& f) { return f.p == p; });
    if (!hit) fail(errc::no_target_curve, "constructed curve failed re-verification");
  }
  return {X, Y};
}

congruence_report verify_50a1(u64 x_max) {
  if (x_max < 7 || x_max > 4000000000ULL)
    fail(errc::precondition_violated, "x_max out of range");
  const general_curve E{1, 0, 1, -1, -2};
  // multiplicative character values on (Z/15)^x, order 15 = lcm(3, 5)
  auto chi1 = [](u64 n) -> u64 {
    switch (n) {
      case 1: return 1; case 2: return 13; case 4: return 4; case 7: return 13;
      case 8: return 7; case 11: return 1; case 13: return 7; default: return 4;
    }
  };
  auto chi2 = [](u64 n) -> u64 {
    switch (n) {
      case 1: return 1; case 2: return 14; case 4: return 1; case 7: return 4;
      case 8: return 14; case 11: return 11; case 13: return 4; default: return 11;
    }
  };
  congruence_report r;
  r.x_max = x_max;
  for (u64 p : primes_up_to(x_max)) {
    if (p < 7 || !has_good_reduction(E, p)) continue;
    ring_context ctx = find_modulus(p, 1);
    trace_data t = ap_auto(reduce_mod_p(E, ctx));
    ++r.primes_checked;
    u64 ap15 = (u64)(((t.ap % 15) + 15) % 15);
    if (ap15 != (chi1(p % 15) + chi2(p % 15)) % 15)
      r.congruence_violations.push_back(p);
    if (ap15 == 1 || ap15 == 14) r.residue_violations.push_back(p);
  }
  return r;
}

nu_sums empirical_nu_sums(u64 p_max, unsigned d, unsigned threads) {
  if (p_max > 31) fail(errc::budget_exceeded, "p_max above the nu budget");
  nu_sums s;
  for (u64 p : primes_up_to(p_max)) {
    if (p < 5) continue;
    nu_record rec = nu_brute(p, d, threads, 31);
    s.total += rec.nu;
    bigint p2 = bigint(p) * p;
    s.over_p2 += bigrational(bigint(rec.nu), p2);
    s.over_p4 += bigrational(bigint(rec.nu), p2 * p2);
  }
  return s;
}

std::vector<labeled_curve> load_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::precondition_violated, "cannot open curve file " + path);
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (!out.empty()) return true;
    }
    return false;
  };
  if (!next_line(line) || line != "label,a1,a2,a3,a4,a6")
    fail(errc::precondition_violated, "curve file must start with header label,a1,a2,a3,a4,a6");

  std::vector<labeled_curve> out;
  while (next_line(line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6)
      fail(errc::precondition_violated, "curve row needs 6 fields: " + line);
    labeled_curve c;
    c.label = fields[0];
    try {
      c.model = general_curve{bigint(fields[1]), bigint(fields[2]),
                              bigint(fields[3]), bigint(fields[4]),
                              bigint(fields[5])};
    } catch (const std::exception&) {
      fail(errc::precondition_violated, "bad integer in curve row: " + line);
    }
    out.push_back(std::move(c));
  }
  return out;
}

const general_curve* find_curve(const std::vector<labeled_curve>& curves,
                                const std::string& label) {
  for (const labeled_curve& c : curves)
    if (c.label == label) return &c.model;
  return nullptr;
}

std::string report_json(const local_torsion_report& r) {
  nlohmann::ordered_json j;
  j["curve"] = r.label;
  j["xmax"] = r.x_max;
  j["d"] = r.d;
  j["found"] = nlohmann::ordered_json::array();
  for (const found_prime& f : r.found)
    j["found"].push_back({{"p", f.p}, {"method", f.method}});
  j["undetermined"] = nlohmann::ordered_json::array();
  for (const undetermined_prime& u : r.undetermined)
    j["undetermined"].push_back({{"p", u.p}, {"reason", u.reason}});
  return j.dump();
}

std::string sweep_csv(const sweep_report& r) {
  std::ostringstream out;
  out << "a,b,pi\n";
  for (const sweep_row& row : r.rows)
    out << row.a << ',' << row.b << ',' << row.pi << '\n';
  return out.str();
}

}  // namespace loctor
