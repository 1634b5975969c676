#pragma once

#include <stdexcept>
#include <string>

namespace nikhp {

/// Failure categories surfaced by the library. Each maps to one family of
/// preconditions or numerical contracts; see the throwing site for details.
enum class errc {
  quadrature_not_converged,
  point_on_support,
  zero_moment,
  mixed_sign,
  interval_overlap,
  atom_at_junction,
  insufficient_moments,
  degenerate_nullspace,
  degree_violation,
  root_precision_loss,
  division_by_zero,
  non_simple_pole,
  pole_hit,
  backend_unsupported,
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::quadrature_not_converged: return "QuadratureNotConverged";
    case errc::point_on_support: return "PointOnSupport";
    case errc::zero_moment: return "ZeroMoment";
    case errc::mixed_sign: return "MixedSign";
    case errc::interval_overlap: return "IntervalOverlap";
    case errc::atom_at_junction: return "AtomAtJunction";
    case errc::insufficient_moments: return "InsufficientMoments";
    case errc::degenerate_nullspace: return "DegenerateNullspace";
    case errc::degree_violation: return "DegreeViolation";
    case errc::root_precision_loss: return "RootPrecisionLoss";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::non_simple_pole: return "NonSimplePole";
    case errc::pole_hit: return "PoleHit";
    case errc::backend_unsupported: return "BackendUnsupported";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace nikhp
