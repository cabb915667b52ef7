#pragma once

#include "rhd/physics.hpp"

namespace rhd {

struct RecoveryOptions {
  double rel_tolerance = 1e-12;
  int max_iterations = 100;
  /// Lower end of the pressure bracket. Never used to clip a result.
  double pressure_floor = 1e-30;

  /// Throws ConfigError on rel_tolerance <= 0 or max_iterations < 1.
  void validate() const;
};

struct RecoveryResult {
  PrimitiveState prim;
  int iterations = 0;
  int bisections = 0;
};

/// Residual of the pressure equation,
///   psi(p) = D W(p) + Gamma/(Gamma-1) p W(p)^2 - E - p,
///   W(p)   = (1 - |m|^2 / (E + p)^2)^(-1/2).
/// Negative below the physical root and positive above it.
double pressure_residual(const ConservedState& cons, const EosParams& eos, double pressure);

/// Recovers (rho, u, v, p) from (D, m, E) with a safeguarded Newton iteration
/// on psi. The bracket [lo, hi] with psi(lo) < 0 < psi(hi) is certified before
/// the first Newton step; any iterate leaving it is replaced by a bisection
/// step. A positive `pressure_hint` inside the bracket is used as the starting
/// point (typically the cell's pressure from the previous time step).
///
/// Throws AdmissibilityError for inputs outside the admissible set and
/// ConvergenceError when the iteration budget is exhausted.
RecoveryResult recover(const ConservedState& cons, const EosParams& eos,
                       const RecoveryOptions& opts = {}, double pressure_hint = 0.0);

inline PrimitiveState recover_primitives(const ConservedState& cons, const EosParams& eos,
                                         const RecoveryOptions& opts = {}) {
  return recover(cons, eos, opts).prim;
}

}  // namespace rhd
