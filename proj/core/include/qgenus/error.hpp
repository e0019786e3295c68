#pragma once

#include <stdexcept>
#include <string>

namespace qgenus {

enum class errc {
  invalid_config,
  inversion_of_zero,
  non_unit_inversion,
  backend_mismatch,
  pole_in_composition,
  trivial_coset,
  no_pole_at_origin,
  modulus_not_constant,
  character_not_constant,
  ode_mismatch,
  singular_matrix,
  condition_violated,
  parity_mismatch,
  truncation_insufficient,
  residue_sum_nonzero,
  identity_failed,
  unbalanced_ratio,
  denominator_vanishes,
  incompatible_exponent_lattices,
  not_polynomial,
  internal,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

/* Process exit code contract used by the CLI. */
inline int exit_code_for(errc code) {
  switch (code) {
    case errc::invalid_config:
      return 2;
    case errc::condition_violated:
    case errc::parity_mismatch:
      return 3;
    case errc::denominator_vanishes:
      return 4;
    default:
      return 5;
  }
}

}  // namespace qgenus
