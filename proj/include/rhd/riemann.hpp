#pragma once

// One- and two-dimensional HLL approximate Riemann solvers.
//
// The two-dimensional solver works at a grid vertex where four constant
// states meet (LD = left-down, RD = right-down, LU = left-up, RU = right-up).
// Its resolved state and fluxes use all four states, so transverse wave
// propagation across the vertex is retained.

#include "rhd/physics.hpp"

namespace rhd {

/// Cached per-state data consumed by the Riemann solvers.
struct CellState {
  PrimitiveState prim;
  ConservedState cons;
  FluxVector flux_x;
  FluxVector flux_y;

  static CellState from_prim(const PrimitiveState& prim, const EosParams& eos);

  const FluxVector& flux(Axis a) const noexcept { return a == Axis::x ? flux_x : flux_y; }
};

struct WaveSpeeds1D {
  double s_minus = 0.0;  ///< fastest left-going signal
  double s_plus = 0.0;   ///< fastest right-going signal
};

struct WaveSpeeds2D {
  double s_left = 0.0;
  double s_right = 0.0;
  double s_down = 0.0;
  double s_up = 0.0;

  double left_minus() const noexcept { return s_left < 0.0 ? s_left : 0.0; }
  double right_plus() const noexcept { return s_right > 0.0 ? s_right : 0.0; }
  double down_minus() const noexcept { return s_down < 0.0 ? s_down : 0.0; }
  double up_plus() const noexcept { return s_up > 0.0 ? s_up : 0.0; }

  bool subsonic() const noexcept { return s_left < 0.0 && 0.0 < s_right && s_down < 0.0 && 0.0 < s_up; }
  WaveSpeeds1D along_x() const noexcept { return {s_left, s_right}; }
  WaveSpeeds1D along_y() const noexcept { return {s_down, s_up}; }
};

struct CornerStates {
  CellState left_down;
  CellState right_down;
  CellState left_up;
  CellState right_up;
};

/// Fluxes of the vertex solver. A `degenerate_*` flag is set when the fan
/// transverse to that flux has zero width; the transverse correction is then
/// dropped and the flux is the average of the two 1D HLL fluxes.
struct CornerFlux {
  FluxVector flux_x;
  FluxVector flux_y;
  bool degenerate_x = false;
  bool degenerate_y = false;
};

/// alpha * min(lam1), alpha * max(lam4) of two states. Throws ConfigError for alpha < 1.
WaveSpeeds1D wave_speeds_1d(const PrimitiveState& left, const PrimitiveState& right, const EosParams& eos,
                            Axis axis, double alpha);

/// alpha-scaled extremal eigenvalues over the four vertex states, per axis.
WaveSpeeds2D wave_speeds_2d(const CornerStates& corners, const EosParams& eos, double alpha);

/// Integral average of the 1D HLL fan,
///   U* = (S_R U_R - S_L U_L + F_L - F_R) / (S_R - S_L).
/// Throws DegenerateFanError when S_R == S_L.
ConservedState hll_state_1d(const CellState& left, const CellState& right, Axis axis, const WaveSpeeds1D& speeds);

/// Upwinded HLL flux with sign-clipped speeds; returns F_L for S_L >= 0 and
/// F_R for S_R <= 0.
FluxVector hll_flux_1d(const CellState& left, const CellState& right, Axis axis, const WaveSpeeds1D& speeds);

/// Average of the solution over the 2D fan at the vertex. Requires
/// S_L < 0 < S_R and S_D < 0 < S_U, otherwise throws DispatchError.
///
/// Evaluated as the y-combination of the two x-direction HLL states minus the
/// transverse G correction. For y-invariant data (LD = LU, RD = RU) this gives
/// hll_state_1d of the x pair bit for bit.
ConservedState hll_state_2d(const CornerStates& corners, const WaveSpeeds2D& speeds);

/// Vertex fluxes F^{2D} and G^{2D} built from the four edge HLL fluxes around
/// the vertex and the transverse flux differences, all with clipped speeds.
CornerFlux hll_flux_2d(const CornerStates& corners, const WaveSpeeds2D& speeds);

}  // namespace rhd
