#pragma once

#include <stdexcept>
#include <string>

namespace loctor {

/* Every failure mode the library reports.  Errors are thrown as
 * loctor::error carrying one of these codes; the code, not the message
 * text, is the stable part of the contract. */
enum class errc {
  composite_modulus,
  context_mismatch,
  non_unit,
  singular_root,
  non_unit_denominator,
  ladder_invariant_violated,
  too_large,
  singular_curve,
  ambiguous_order,
  no_p_torsion,
  sample_exhausted,
  small_prime,
  bad_reduction,
  precondition_violated,
  budget_exceeded,
  unsupported_prime,
  not_prime,
  empty_family,
  no_target_curve,
};

const char* errc_name(errc k) noexcept;

class error : public std::runtime_error {
public:
  error(errc k, const std::string& what)
      : std::runtime_error(std::string(errc_name(k)) + ": " + what), kind_(k) {}
  errc kind() const noexcept { return kind_; }

private:
  errc kind_;
};

[[noreturn]] inline void fail(errc k, const std::string& what) {
  throw error(k, what);
}

}  // namespace loctor
