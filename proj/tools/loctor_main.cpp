#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "loctor/classnum.hpp"
#include "loctor/counting.hpp"
#include "loctor/errors.hpp"
#include "loctor/lifttest.hpp"
#include "loctor/survey.hpp"

using njson = nlohmann::ordered_json;
using loctor::i64;
using loctor::u64;

namespace {

void emit(const njson& j) { std::printf("%s\n", j.dump().c_str()); }

void emit_raw(const std::string& s) { std::fputs(s.c_str(), stdout); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local torsion primes of elliptic curves over Q"};
  app.require_subcommand(1);

  i64 opt_a = 0, opt_b = 0;
  u64 opt_p = 5;
  auto* cmd_ap = app.add_subcommand(
      "ap", "trace of Frobenius of y^2 = x^3 + ax + b over F_p");
  cmd_ap->add_option("--a", opt_a)->required();
  cmd_ap->add_option("--b", opt_b)->required();
  cmd_ap->add_option("--p", opt_p)->required();

  std::string curve_file = "data/curves.csv", label;
  u64 opt_xmax = 100;
  unsigned opt_d = 1, opt_threads = 0;
  bool opt_all_degrees = false;
  auto* cmd_torsion = app.add_subcommand(
      "torsion", "scan p <= xmax for torsion over degree <= d extensions");
  cmd_torsion->add_option("--curve-file", curve_file,
                          "CSV with header label,a1,a2,a3,a4,a6");
  cmd_torsion->add_option("--label", label)->required();
  cmd_torsion->add_option("--xmax", opt_xmax)->required();
  cmd_torsion->add_option("--d", opt_d);
  cmd_torsion->add_flag("--all-degrees", opt_all_degrees,
                        "recheck every multiple of the trace order");
  cmd_torsion->add_option("--threads", opt_threads);

  auto* cmd_nu = app.add_subcommand(
      "nu", "exhaustive count of passing pairs over (Z/p^2)^2");
  cmd_nu->add_option("--p", opt_p)->required();
  cmd_nu->add_option("--d", opt_d);
  cmd_nu->add_option("--threads", opt_threads);

  auto* cmd_deuring = app.add_subcommand(
      "deuring", "trace-r pair counts against the class-number target");
  cmd_deuring->add_option("--p", opt_p)->required();

  u64 opt_n = 3;
  auto* cmd_hurwitz = app.add_subcommand("hurwitz", "6 H(n)");
  cmd_hurwitz->add_option("--n", opt_n)->required();

  i64 opt_A = 0, opt_B = 0;
  u64 opt_sample = 0, opt_budget = 100000;
  auto* cmd_sweep = app.add_subcommand(
      "sweep", "per-curve torsion-prime counts over |a| <= A, |b| <= B");
  cmd_sweep->add_option("--A", opt_A)->required();
  cmd_sweep->add_option("--B", opt_B)->required();
  cmd_sweep->add_option("--xmax", opt_xmax)->required();
  cmd_sweep->add_option("--d", opt_d);
  cmd_sweep->add_option("--sample", opt_sample,
                        "sample this many pairs instead of the full box");
  cmd_sweep->add_option("--budget", opt_budget, "exhaustive cap on 4AB");
  cmd_sweep->add_option("--threads", opt_threads);

  std::vector<u64> opt_primes;
  auto* cmd_construct = app.add_subcommand(
      "construct", "curve with a point of order p over Q_p per target p");
  cmd_construct->add_option("--primes", opt_primes, "comma-separated targets")
      ->required()
      ->delimiter(',');

  auto* cmd_verify = app.add_subcommand(
      "verify-50a1", "trace congruence mod 15 for the conductor-50 curve");
  cmd_verify->add_option("--xmax", opt_xmax)->required();

  auto* cmd_heuristic = app.add_subcommand(
      "heuristic", "sum of 1/(4 p^(3/2)) over primes p <= xmax");
  cmd_heuristic->add_option("--xmax", opt_xmax)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_ap) {
      i64 ap = loctor::ap_auto_raw(opt_p, loctor::mod_u64(loctor::bigint(opt_a), opt_p),
                                   loctor::mod_u64(loctor::bigint(opt_b), opt_p));
      emit(njson{{"p", opt_p}, {"ap", ap}});
    } else if (*cmd_torsion) {
      auto curves = loctor::load_curve_csv(curve_file);
      const loctor::general_curve* E = loctor::find_curve(curves, label);
      if (!E) {
        std::fprintf(stderr, "loctor: no curve labeled %s in %s\n",
                     label.c_str(), curve_file.c_str());
        return 2;
      }
      loctor::torsion_scan_options opt;
      opt.all_degrees = opt_all_degrees;
      opt.threads = opt_threads;
      opt.d_cap = 6;
      loctor::local_torsion_report r =
          loctor::local_torsion_primes(*E, label, opt_xmax, opt_d, opt);
      emit_raw(loctor::report_json(r) + "\n");
    } else if (*cmd_nu) {
      loctor::nu_record r = loctor::nu_brute(opt_p, opt_d, opt_threads);
      emit(njson{{"p", r.p},
                 {"d", r.d},
                 {"nu", r.nu},
                 {"nuPrime", r.nu_prime},
                 {"nu0", r.nu_0},
                 {"nu1728", r.nu_1728},
                 {"pairs", r.pairs_examined}});
    } else if (*cmd_deuring) {
      njson checks = njson::array();
      bool all_hold = true;
      for (i64 r = -(i64)loctor::u64(2 * std::sqrt((double)opt_p)); r * r < 4 * (i64)opt_p; ++r) {
        if (r == 0) continue;
        loctor::deuring_check c = loctor::verify_deuring(opt_p, r);
        all_hold = all_hold && c.identity_holds;
        checks.push_back(njson{{"r", c.r},
                               {"count", c.count_all},
                               {"sixH", c.six_h},
                               {"holds", c.identity_holds}});
      }
      emit(njson{{"p", opt_p}, {"checks", checks}, {"allHold", all_hold}});
    } else if (*cmd_hurwitz) {
      emit(njson{{"n", opt_n}, {"sixH", loctor::hurwitz_six(opt_n)}});
    } else if (*cmd_sweep) {
      loctor::sweep_options opt;
      opt.sample = opt_sample;
      opt.budget = opt_budget;
      opt.threads = opt_threads;
      loctor::sweep_report r = loctor::sweep(opt_A, opt_B, opt_xmax, opt_d, opt);
      emit_raw(loctor::sweep_csv(r));
      std::fprintf(stderr, "curves=%llu singular=%llu pi_total=%llu\n",
                   (unsigned long long)r.curve_count,
                   (unsigned long long)r.singular_skipped,
                   (unsigned long long)r.pi_total);
    } else if (*cmd_construct) {
      auto [A, B] = loctor::construct_curve(opt_primes);
      emit(njson{{"primes", opt_primes}, {"A", A.str()}, {"B", B.str()}});
    } else if (*cmd_verify) {
      loctor::congruence_report r = loctor::verify_50a1(opt_xmax);
      emit(njson{{"xmax", r.x_max},
                 {"checked", r.primes_checked},
                 {"congruenceViolations", r.congruence_violations},
                 {"residueViolations", r.residue_violations}});
    } else if (*cmd_heuristic) {
      emit(njson{{"xmax", opt_xmax}, {"sum", loctor::heuristic_sum(opt_xmax)}});
    }
  } catch (const loctor::error& e) {
    emit(njson{{"error", loctor::errc_name(e.kind())}, {"message", e.what()}});
    return 3;
  }
  return 0;
}
