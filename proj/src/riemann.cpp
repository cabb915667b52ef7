#include "rhd/riemann.hpp"

#include <sstream>

#include "rhd/errors.hpp"

namespace rhd {

namespace {

// Same selection rule as the packed min/max instructions, so the vector
// kernels can reproduce these results bit for bit.
inline double pick_min(double a, double b) noexcept { return a < b ? a : b; }
inline double pick_max(double a, double b) noexcept { return a > b ? a : b; }

void require_alpha(double alpha) {
  if (!(alpha >= 1.0)) {
    std::ostringstream msg;
    msg << "wave-speed amplifier alpha must be >= 1, got " << alpha;
    throw ConfigError(msg.str());
  }
}

// (s_hi A - s_lo B) / (s_hi - s_lo), written around the mean of A and B so
// that A == B returns A exactly.
inline double fan_blend(double a, double b, double half_ratio) noexcept {
  return 0.5 * (a + b) + half_ratio * (a - b);
}

}  // namespace

CellState CellState::from_prim(const PrimitiveState& prim, const EosParams& eos) {
  CellState s;
  s.prim = prim;
  s.cons = prim_to_cons(prim, eos);
  s.flux_x = physical_flux(prim, s.cons, Axis::x);
  s.flux_y = physical_flux(prim, s.cons, Axis::y);
  return s;
}

WaveSpeeds1D wave_speeds_1d(const PrimitiveState& left, const PrimitiveState& right, const EosParams& eos,
                            Axis axis, double alpha) {
  require_alpha(alpha);
  const auto el = eigenvalues(left, eos, axis);
  const auto er = eigenvalues(right, eos, axis);
  return {alpha * pick_min(el.lam1, er.lam1), alpha * pick_max(el.lam4, er.lam4)};
}

WaveSpeeds2D wave_speeds_2d(const CornerStates& c, const EosParams& eos, double alpha) {
  require_alpha(alpha);
  const auto xld = eigenvalues(c.left_down.prim, eos, Axis::x);
  const auto xrd = eigenvalues(c.right_down.prim, eos, Axis::x);
  const auto xlu = eigenvalues(c.left_up.prim, eos, Axis::x);
  const auto xru = eigenvalues(c.right_up.prim, eos, Axis::x);
  const auto yld = eigenvalues(c.left_down.prim, eos, Axis::y);
  const auto yrd = eigenvalues(c.right_down.prim, eos, Axis::y);
  const auto ylu = eigenvalues(c.left_up.prim, eos, Axis::y);
  const auto yru = eigenvalues(c.right_up.prim, eos, Axis::y);
  WaveSpeeds2D s;
  s.s_left = alpha * pick_min(pick_min(xld.lam1, xrd.lam1), pick_min(xlu.lam1, xru.lam1));
  s.s_right = alpha * pick_max(pick_max(xld.lam4, xrd.lam4), pick_max(xlu.lam4, xru.lam4));
  s.s_down = alpha * pick_min(pick_min(yld.lam1, yrd.lam1), pick_min(ylu.lam1, yru.lam1));
  s.s_up = alpha * pick_max(pick_max(yld.lam4, yrd.lam4), pick_max(ylu.lam4, yru.lam4));
  return s;
}

ConservedState hll_state_1d(const CellState& left, const CellState& right, Axis axis, const WaveSpeeds1D& speeds) {
  const double sl = speeds.s_minus;
  const double sr = speeds.s_plus;
  if (!(sr != sl)) throw DegenerateFanError("HLL fan has zero width (S_R == S_L)");
  const FluxVector& fl = left.flux(axis);
  const FluxVector& fr = right.flux(axis);
  const double inv = 1.0 / (sr - sl);
  ConservedState out;
  for (std::size_t k = 0; k < 4; ++k) {
    out[k] = (sr * right.cons[k] - sl * left.cons[k] + fl[k] - fr[k]) * inv;
  }
  return out;
}

FluxVector hll_flux_1d(const CellState& left, const CellState& right, Axis axis, const WaveSpeeds1D& speeds) {
  const FluxVector& fl = left.flux(axis);
  const FluxVector& fr = right.flux(axis);
  if (speeds.s_minus >= 0.0) return fl;
  if (speeds.s_plus <= 0.0) return fr;
  const double sl = speeds.s_minus;
  const double sr = speeds.s_plus;
  const double slsr = sl * sr;
  const double inv = 1.0 / (sr - sl);
  FluxVector out;
  for (std::size_t k = 0; k < 4; ++k) {
    out[k] = (sr * fl[k] - sl * fr[k] + slsr * (right.cons[k] - left.cons[k])) * inv;
  }
  return out;
}

ConservedState hll_state_2d(const CornerStates& c, const WaveSpeeds2D& s) {
  if (!s.subsonic()) {
    throw DispatchError("2D HLL state needs S_L < 0 < S_R and S_D < 0 < S_U; use the 1D solver");
  }
  const ConservedState up = hll_state_1d(c.left_up, c.right_up, Axis::x, s.along_x());
  const ConservedState down = hll_state_1d(c.left_down, c.right_down, Axis::x, s.along_x());
  const double half_ratio = 0.5 * (s.s_up + s.s_down) / (s.s_up - s.s_down);
  const double area = (s.s_right - s.s_left) * (s.s_up - s.s_down);
  ConservedState out;
  for (std::size_t k = 0; k < 4; ++k) {
    const double g_right = c.right_up.flux_y[k] - c.right_down.flux_y[k];
    const double g_left = c.left_up.flux_y[k] - c.left_down.flux_y[k];
    const double transverse = (s.s_right * g_right - s.s_left * g_left) / area;
    out[k] = fan_blend(up[k], down[k], half_ratio) - transverse;
  }
  return out;
}

CornerFlux hll_flux_2d(const CornerStates& c, const WaveSpeeds2D& s) {
  const double slm = s.left_minus();
  const double srp = s.right_plus();
  const double sdm = s.down_minus();
  const double sup = s.up_plus();

  const FluxVector f_up = hll_flux_1d(c.left_up, c.right_up, Axis::x, s.along_x());
  const FluxVector f_down = hll_flux_1d(c.left_down, c.right_down, Axis::x, s.along_x());
  const FluxVector g_right = hll_flux_1d(c.right_down, c.right_up, Axis::y, s.along_y());
  const FluxVector g_left = hll_flux_1d(c.left_down, c.left_up, Axis::y, s.along_y());

  const double width_x = srp - slm;
  const double width_y = sup - sdm;

  CornerFlux out;
  out.degenerate_x = !(width_y > 0.0);
  out.degenerate_y = !(width_x > 0.0);
  const double ratio_x = out.degenerate_x ? 0.0 : 0.5 * (sup + sdm) / width_y;
  const double ratio_y = out.degenerate_y ? 0.0 : 0.5 * (srp + slm) / width_x;
  // 2 S_L^- S_R^+ / (S_R^+ - S_L^-) and its y counterpart
  const double coef_x = out.degenerate_y ? 0.0 : 2.0 * slm * srp / width_x;
  const double coef_y = out.degenerate_x ? 0.0 : 2.0 * sdm * sup / width_y;

  for (std::size_t k = 0; k < 4; ++k) {
    const double g_cross = (c.right_up.flux_y[k] - c.right_down.flux_y[k]) -
                           (c.left_up.flux_y[k] - c.left_down.flux_y[k]);
    const double f_cross = (c.right_up.flux_x[k] - c.left_up.flux_x[k]) -
                           (c.right_down.flux_x[k] - c.left_down.flux_x[k]);
    out.flux_x[k] = fan_blend(f_up[k], f_down[k], ratio_x);
    if (!out.degenerate_x) out.flux_x[k] -= coef_x * g_cross / width_y;
    out.flux_y[k] = fan_blend(g_right[k], g_left[k], ratio_y);
    if (!out.degenerate_y) out.flux_y[k] -= coef_y * f_cross / width_x;
  }
  return out;
}

}  // namespace rhd
