#pragma once

// Randomised property suites for the admissible set, the vertex Riemann
// solver and primitive recovery. Shared by the `verify` command and the
// acceptance checks.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rhd/physics.hpp"
#include "rhd/recovery.hpp"

namespace rhd::verify {

struct SampleRanges {
  double log_rho_min = -10.0;
  double log_rho_max = 2.0;
  double log_p_min = -12.0;
  double log_p_max = 3.0;
  /// Speeds reach 1 - min_speed_gap. Half the draws take |u| uniform, half
  /// take 1 - |u| log-uniform, so both slow and ultra-relativistic flows occur.
  double min_speed_gap = 1e-8;
  /// When > 0, Lorentz factors are drawn in [1, max_lorentz] instead (half
  /// uniform, half log-uniform).
  double max_lorentz = 0.0;
  /// States whose exact relative admissibility margin
  /// (E - sqrt(D^2 + |m|^2)) / E falls below this are redrawn: binary64 cannot
  /// represent them as admissible conserved vectors. 0 keeps every draw.
  double min_relative_margin = 1e-12;
};

/// Exact (E - sqrt(D^2 + |m|^2)) / E of prim_to_cons(prim), evaluated without
/// the cancellation of the direct formula:
///   E^2 - |m|^2 - D^2 = W^2 rho p (2(k-1) + theta k (k-2)) + p^2,
///   k = Gamma/(Gamma-1), theta = p/rho.
double relative_margin(const PrimitiveState& prim, const EosParams& eos);

class StateSampler {
 public:
  StateSampler(std::uint64_t seed, const EosParams& eos, SampleRanges ranges = {});

  /// A valid primitive state whose conserved image is representable.
  PrimitiveState draw();
  /// Draw without the representability filter.
  PrimitiveState draw_raw();

  double uniform(double lo, double hi);
  double log_uniform(double lo, double hi);

  std::int64_t rejected() const noexcept { return rejected_; }
  const EosParams& eos() const noexcept { return eos_; }
  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
  EosParams eos_;
  SampleRanges ranges_;
  std::int64_t rejected_ = 0;
};

struct SuiteResult {
  std::string name;
  std::int64_t samples = 0;
  std::int64_t failures = 0;
  std::int64_t rejected = 0;  ///< unrepresentable draws skipped by the sampler
  double worst = 0.0;         ///< suite-specific worst metric
  std::string detail;

  bool passed() const noexcept { return failures == 0; }
};

// properties of the admissible set
SuiteResult convexity(std::int64_t n, std::uint64_t seed);
SuiteResult scaling(std::int64_t n, std::uint64_t seed);
SuiteResult positive_combination(std::int64_t n, std::uint64_t seed);
/// alpha U - F_i(U) and -beta U + F_i(U) at alpha = lam4, beta = lam1 and
/// beyond by delta in {1e-3, 1, 10}, both axes.
SuiteResult flux_closure(std::int64_t n, std::uint64_t seed);
/// c_s^2 < Gamma - 1, lam1 < lam4 bracketing u_i, prim_to_cons admissible.
SuiteResult state_sanity(std::int64_t n, std::uint64_t seed);

// vertex solver with alpha = 2
SuiteResult vertex_state(std::int64_t n, std::uint64_t seed);
SuiteResult vertex_h_terms(std::int64_t n, std::uint64_t seed);

struct RoundTripStats {
  SuiteResult result;               ///< failures: error > tolerance
  double max_rel_error = 0.0;       ///< over rho, u, v, p
  double max_err_rho = 0.0;
  double max_err_vel = 0.0;
  double max_err_p = 0.0;
  double max_residual = 0.0;        ///< |psi(p)| / max(E, 1)
  double max_conditioned = 0.0;     ///< error / (eps W^2 (1 + rho/p))
  std::int64_t residual_failures = 0;
  /// error above tolerance (or a recovery error) although
  /// eps W^2 (1 + rho/p) <= tolerance / 100
  std::int64_t well_conditioned_failures = 0;
  std::int64_t recovery_errors = 0;
  std::int64_t unrepresentable = 0;  ///< prim_to_cons not admissible in binary64
};

/// prim -> cons -> prim over Lorentz factors <= max_lorentz, p in 10^[-12, 3]
/// and rho in `ranges`. Velocity errors are relative to |u|.
RoundTripStats recovery_roundtrip(std::int64_t n, std::uint64_t seed, double tolerance,
                                  const SampleRanges& ranges, const RecoveryOptions& opts = {},
                                  double residual_tolerance = 1e-12);

std::vector<SuiteResult> run_all(std::int64_t n, std::uint64_t seed);

}  // namespace rhd::verify
