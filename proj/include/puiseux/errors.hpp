#pragma once

#include <stdexcept>
#include <string>

namespace puiseux {

// Error taxonomy shared by the library and the CLI front end. Usage-class
// errors map to exit status 2, computation-class errors to exit status 1.
enum class Errc {
  syntax,             // malformed input text
  non_monic,          // leading y-coefficient is not a nonzero constant
  bad_exponent,       // negative/fractional variable exponent in input
  bad_selector,       // unknown root selector
  bad_config,         // invalid configuration or precondition
  omega_mismatch,     // operands built over different weight vectors
  lattice_mismatch,   // exponent denominator does not divide the requested k
  zero_series,        // valuation/factorization of the zero series
  not_unit,           // inversion of a series without dominating constant term
  division_by_zero,
  injectivity,        // two distinct exponents of equal weight observed
  trunc_insufficient, // requested bound exceeds a truncation bound
  conductor_cap,
  depth_cap,
  denominator_cap,
  orbit_cap,
  tower,              // root requires extension beyond the cyclotomic tower
  undetermined,       // value vanishes up to truncation
  internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::syntax: return "syntax";
    case Errc::non_monic: return "non_monic";
    case Errc::bad_exponent: return "bad_exponent";
    case Errc::bad_selector: return "bad_selector";
    case Errc::bad_config: return "bad_config";
    case Errc::omega_mismatch: return "omega_mismatch";
    case Errc::lattice_mismatch: return "lattice_mismatch";
    case Errc::zero_series: return "zero_series";
    case Errc::not_unit: return "not_unit";
    case Errc::division_by_zero: return "division_by_zero";
    case Errc::injectivity: return "injectivity";
    case Errc::trunc_insufficient: return "trunc_insufficient";
    case Errc::conductor_cap: return "conductor_cap";
    case Errc::depth_cap: return "depth_cap";
    case Errc::denominator_cap: return "denominator_cap";
    case Errc::orbit_cap: return "orbit_cap";
    case Errc::tower: return "tower";
    case Errc::undetermined: return "undetermined";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  Errc code() const { return code_; }

  bool usage() const {
    switch (code_) {
      case Errc::syntax:
      case Errc::non_monic:
      case Errc::bad_exponent:
      case Errc::bad_selector:
      case Errc::bad_config:
        return true;
      default:
        return false;
    }
  }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace puiseux
