#include "rhd/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rhd/errors.hpp"
#include "rhd/riemann.hpp"

namespace rhd::verify {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

ConservedState axpy(double a, const ConservedState& u, double b, const FluxVector& f) {
  return {a * u[0] + b * f[0], a * u[1] + b * f[1], a * u[2] + b * f[2], a * u[3] + b * f[3]};
}

double rel_margin_of(const ConservedState& u) {
  return admissibility_margin(u).energy / std::abs(u[3]);
}

// worst = smallest relative margin seen; failures counted separately
void track(SuiteResult& r, const ConservedState& u) {
  if (!is_admissible(u)) ++r.failures;
  const double m = rel_margin_of(u);
  if (r.samples == 1 || m < r.worst) r.worst = m;
}

std::string rejected_note(const StateSampler& s) {
  std::ostringstream os;
  os << "redrawn unrepresentable states: " << s.rejected();
  return os.str();
}

CornerStates draw_corners(StateSampler& s) {
  const EosParams& eos = s.eos();
  return {CellState::from_prim(s.draw(), eos), CellState::from_prim(s.draw(), eos),
          CellState::from_prim(s.draw(), eos), CellState::from_prim(s.draw(), eos)};
}

// Extended-precision evaluation of the set properties. The inclusions are
// statements about exact arithmetic; at alpha = lam4 the combination alpha U - F
// cancels to a relative size of order 1 - |u| and binary64 rounding alone can
// push a combination with true margin 1e-12 outside the set. The property
// checks therefore run in binary128 from the (exact) sampled primitives, and
// the binary64 evaluation is reported alongside.
__extension__ typedef __float128 quad;

quad qsqrt(quad x) {
  if (!(x > 0)) return 0;
  quad y = std::sqrt(static_cast<double>(x));
  y = 0.5 * (y + x / y);
  y = 0.5 * (y + x / y);
  return 0.5 * (y + x / y);
}

struct QuadCell {
  std::array<quad, 4> cons{};
  std::array<quad, 4> flux_x{};
  std::array<quad, 4> flux_y{};
  quad lam1[2]{};
  quad lam4[2]{};

  const std::array<quad, 4>& flux(Axis a) const { return a == Axis::x ? flux_x : flux_y; }
};

QuadCell quad_cell(const PrimitiveState& v, const EosParams& eos) {
  const quad g = eos.gamma();
  const quad rho = v.rho, u = v.vel_x, w = v.vel_y, p = v.pressure;
  const quad q = u * u + w * w;
  const quad lf2 = 1 / (1 - q);
  const quad h = 1 + g / (g - 1) * p / rho;
  const quad d = rho * qsqrt(lf2);
  const quad mx = rho * h * lf2 * u, my = rho * h * lf2 * w;
  const quad e = rho * h * lf2 - p;
  QuadCell c;
  c.cons = {d, mx, my, e};
  c.flux_x = {d * u, mx * u + p, my * u, mx};
  c.flux_y = {d * w, mx * w, my * w + p, my};
  const quad c2 = g * p / (rho * h);
  const quad cs = qsqrt(c2);
  for (int k = 0; k < 2; ++k) {
    const quad un = k == 0 ? u : w;
    const quad root = cs * qsqrt(1 - q) * qsqrt(1 - un * un - c2 * (q - un * un));
    const quad den = 1 - c2 * q;
    c.lam1[k] = (un * (1 - c2) - root) / den;
    c.lam4[k] = (un * (1 - c2) + root) / den;
  }
  return c;
}

// (E - |(D, m)|) / |E|, negative outside the set; D <= 0 maps to -1
double quad_rel_margin(const std::array<quad, 4>& u) {
  if (!(u[0] > 0) || !(u[3] > 0)) return -1.0;
  const quad norm = qsqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  return static_cast<double>((u[3] - norm) / u[3]);
}

}  // namespace

double relative_margin(const PrimitiveState& prim, const EosParams& eos) {
  const double k = eos.gamma() / (eos.gamma() - 1.0);
  const double w = lorentz_factor(prim.vel_x, prim.vel_y);
  const double theta = prim.pressure / prim.rho;
  const double num = w * w * prim.rho * prim.pressure * (2.0 * (k - 1.0) + theta * k * (k - 2.0)) +
                     prim.pressure * prim.pressure;
  const ConservedState u = prim_to_cons(prim, eos);
  const double norm = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  return num / (u[3] * (u[3] + norm));
}

StateSampler::StateSampler(std::uint64_t seed, const EosParams& eos, SampleRanges ranges)
    : rng_(seed), eos_(eos), ranges_(ranges) {}

double StateSampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double StateSampler::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

PrimitiveState StateSampler::draw_raw() {
  for (;;) {
    const double rho = std::pow(10.0, uniform(ranges_.log_rho_min, ranges_.log_rho_max));
    const double p = std::pow(10.0, uniform(ranges_.log_p_min, ranges_.log_p_max));
    const bool spread = std::uniform_int_distribution<int>(0, 1)(rng_) == 1;
    double speed;
    if (ranges_.max_lorentz > 0.0) {
      const double w = spread ? log_uniform(1.0, ranges_.max_lorentz) : uniform(1.0, ranges_.max_lorentz);
      speed = std::sqrt((w - 1.0) * (w + 1.0)) / w;
    } else {
      const double gap = ranges_.min_speed_gap;
      speed = spread ? 1.0 - log_uniform(gap, 1.0) : uniform(0.0, 1.0 - gap);
    }
    const double angle = uniform(0.0, 2.0 * std::numbers::pi);
    const PrimitiveState v{rho, speed * std::cos(angle), speed * std::sin(angle), p};
    if (is_valid(v)) return v;
  }
}

PrimitiveState StateSampler::draw() {
  for (;;) {
    const PrimitiveState v = draw_raw();
    if (ranges_.min_relative_margin <= 0.0 || relative_margin(v, eos_) >= ranges_.min_relative_margin) return v;
    ++rejected_;
  }
}

SuiteResult convexity(std::int64_t n, std::uint64_t seed) {
  StateSampler s(seed, EosParams(5.0 / 3.0));
  SuiteResult r;
  r.name = "convexity of the admissible set";
  for (std::int64_t k = 0; k < n; ++k) {
    const ConservedState a = prim_to_cons(s.draw(), s.eos());
    const ConservedState b = prim_to_cons(s.draw(), s.eos());
    const double t = s.uniform(0.0, 1.0);
    ++r.samples;
    track(r, t * a + (1.0 - t) * b);
  }
  r.rejected = s.rejected();
  r.detail = rejected_note(s);
  return r;
}

SuiteResult scaling(std::int64_t n, std::uint64_t seed) {
  StateSampler s(seed, EosParams(5.0 / 3.0));
  SuiteResult r;
  r.name = "kappa scaling";
  for (std::int64_t k = 0; k < n; ++k) {
    const ConservedState u = prim_to_cons(s.draw(), s.eos());
    const double kappa = s.log_uniform(1e-6, 1e6);
    ++r.samples;
    track(r, kappa * u);
  }
  r.rejected = s.rejected();
  r.detail = rejected_note(s);
  return r;
}

SuiteResult positive_combination(std::int64_t n, std::uint64_t seed) {
  StateSampler s(seed, EosParams(5.0 / 3.0));
  SuiteResult r;
  r.name = "positive combination";
  for (std::int64_t k = 0; k < n; ++k) {
    const ConservedState a = prim_to_cons(s.draw(), s.eos());
    const ConservedState b = prim_to_cons(s.draw(), s.eos());
    const double c1 = s.log_uniform(1e-6, 1e6);
    const double c2 = s.log_uniform(1e-6, 1e6);
    ++r.samples;
    track(r, c1 * a + c2 * b);
  }
  r.rejected = s.rejected();
  r.detail = rejected_note(s);
  return r;
}

SuiteResult flux_closure(std::int64_t n, std::uint64_t seed) {
  StateSampler s(seed, EosParams(5.0 / 3.0));
  SuiteResult r;
  r.name = "flux closure at and beyond the extreme eigenvalues";
  const double deltas[] = {0.0, 1e-3, 1.0, 10.0};
  std::int64_t bad_draws = 0;
  std::int64_t b64_failures = 0;
  double b64_worst = 1.0;
  r.worst = 1.0;
  for (std::int64_t k = 0; k < n; ++k) {
    const PrimitiveState v = s.draw();
    const ConservedState u = prim_to_cons(v, s.eos());
    const QuadCell qc = quad_cell(v, s.eos());
    ++r.samples;
    const std::int64_t before = r.failures;
    for (Axis axis : {Axis::x, Axis::y}) {
      const int ax = axis == Axis::x ? 0 : 1;
      const EigenSpeeds lam = eigenvalues(v, s.eos(), axis);
      const FluxVector f = physical_flux(v, u, axis);
      const auto& qf = qc.flux(axis);
      for (double d : deltas) {
        std::array<quad, 4> right, left;
        for (std::size_t c = 0; c < 4; ++c) {
          right[c] = (qc.lam4[ax] + d) * qc.cons[c] - qf[c];
          left[c] = -(qc.lam1[ax] - d) * qc.cons[c] + qf[c];
        }
        // margins are compared on the unit-|E| scale of each combination
        const double m = std::min(quad_rel_margin(right), quad_rel_margin(left));
        if (!(m > 0.0)) ++r.failures;
        r.worst = std::min(r.worst, m);

        const ConservedState right64 = axpy(lam.lam4 + d, u, -1.0, f);
        const ConservedState left64 = axpy(-(lam.lam1 - d), u, 1.0, f);
        b64_failures += !is_admissible(right64) + !is_admissible(left64);
        b64_worst = std::min({b64_worst, rel_margin_of(right64), rel_margin_of(left64)});
      }
    }
    if (r.failures != before) ++bad_draws;
  }
  r.rejected = s.rejected();
  std::ostringstream os;
  os << "16 combinations per draw, binary128; draws with a failure: " << bad_draws
     << "; binary64 evaluation: " << b64_failures << " outside the set (worst margin " << b64_worst << "); "
     << rejected_note(s);
  r.detail = os.str();
  return r;
}

SuiteResult state_sanity(std::int64_t n, std::uint64_t seed) {
  StateSampler s(seed, EosParams(5.0 / 3.0));
  SuiteResult r;
  r.name = "sound speed / eigenvalue ordering / forward map";
  const double gm1 = s.eos().gamma() - 1.0;
  for (std::int64_t k = 0; k < n; ++k) {
    const PrimitiveState v = s.draw();
    ++r.samples;
    bool ok = sound_speed_sq(v, s.eos()) < gm1;
    for (Axis axis : {Axis::x, Axis::y}) {
      const EigenSpeeds e = eigenvalues(v, s.eos(), axis);
      const double un = v.vel(axis);
      ok = ok && e.lam1 <= un && un <= e.lam4 && e.lam1 < e.lam4 && e.lam1 > -1.0 && e.lam4 < 1.0;
    }
    ok = ok && is_admissible(prim_to_cons(v, s.eos()));
    if (!ok) ++r.failures;
  }
  r.rejected = s.rejected();
  r.detail = rejected_note(s);
  return r;
}

SuiteResult vertex_state(std::int64_t n, std::uint64_t seed) {
  StateSampler s(seed, EosParams(5.0 / 3.0));
  SuiteResult r;
  r.name = "vertex HLL state, alpha = 2";
  std::int64_t supersonic = 0;
  while (r.samples < n) {
    const CornerStates c = draw_corners(s);
    const WaveSpeeds2D w = wave_speeds_2d(c, s.eos(), 2.0);
    if (!w.subsonic()) {
      ++supersonic;
      continue;
    }
    ++r.samples;
    track(r, hll_state_2d(c, w));
  }
  r.rejected = s.rejected();
  std::ostringstream os;
  os << "quadruples outside S_L < 0 < S_R, S_D < 0 < S_U redrawn: " << supersonic << "; " << rejected_note(s);
  r.detail = os.str();
  return r;
}

SuiteResult vertex_h_terms(std::int64_t n, std::uint64_t seed) {
  StateSampler s(seed, EosParams(5.0 / 3.0));
  SuiteResult r;
  r.name = "vertex H-terms, alpha = 2";
  r.worst = 1.0;
  double worst_recombination = 0.0;
  std::int64_t b64_failures = 0;
  while (r.samples < n) {
    const CornerStates c = draw_corners(s);
    const WaveSpeeds2D w = wave_speeds_2d(c, s.eos(), 2.0);
    if (!w.subsonic()) continue;
    ++r.samples;

    // binary128 H-terms with binary128 wave speeds
    const QuadCell q[4] = {quad_cell(c.left_down.prim, s.eos()), quad_cell(c.right_down.prim, s.eos()),
                           quad_cell(c.left_up.prim, s.eos()), quad_cell(c.right_up.prim, s.eos())};
    quad sl = q[0].lam1[0], sr = q[0].lam4[0], sd = q[0].lam1[1], su = q[0].lam4[1];
    for (const QuadCell& a : q) {
      sl = std::min(sl, a.lam1[0]);
      sr = std::max(sr, a.lam4[0]);
      sd = std::min(sd, a.lam1[1]);
      su = std::max(su, a.lam4[1]);
    }
    sl *= 2;
    sr *= 2;
    sd *= 2;
    su *= 2;
    const quad sx[4] = {sl, sr, sl, sr};
    const quad sy[4] = {sd, sd, su, su};
    double m = 1.0;
    for (int a = 0; a < 4; ++a) {
      std::array<quad, 4> h;
      for (std::size_t k = 0; k < 4; ++k) h[k] = q[a].cons[k] - q[a].flux_x[k] / sx[a] - q[a].flux_y[k] / sy[a];
      m = std::min(m, quad_rel_margin(h));
    }
    if (!(m > 0.0)) ++r.failures;
    r.worst = std::min(r.worst, m);

    // binary64 H-terms, and U* as their convex combination
    const auto h = [](const CellState& a, double hx, double hy) {
      ConservedState out;
      for (std::size_t k = 0; k < 4; ++k) out[k] = a.cons[k] - a.flux_x[k] / hx - a.flux_y[k] / hy;
      return out;
    };
    const CellState* cells[4] = {&c.left_down, &c.right_down, &c.left_up, &c.right_up};
    const double wx[4] = {w.s_left, w.s_right, w.s_left, w.s_right};
    const double wy[4] = {w.s_down, w.s_down, w.s_up, w.s_up};
    const double b = (w.s_right - w.s_left) * (w.s_up - w.s_down);
    const double coef[4] = {w.s_left * w.s_down / b, -w.s_right * w.s_down / b, -w.s_left * w.s_up / b,
                            w.s_right * w.s_up / b};
    ConservedState hs[4];
    for (int a = 0; a < 4; ++a) {
      hs[a] = h(*cells[a], wx[a], wy[a]);
      if (!is_admissible(hs[a])) ++b64_failures;
    }
    const ConservedState direct = hll_state_2d(c, w);
    for (std::size_t k = 0; k < 4; ++k) {
      double combo = 0.0, scale = 0.0;
      for (int a = 0; a < 4; ++a) {
        combo += coef[a] * hs[a][k];
        // size of the terms that cancel inside H_A
        scale += std::abs(coef[a]) * (std::abs(cells[a]->cons[k]) + std::abs(cells[a]->flux_x[k] / wx[a]) +
                                      std::abs(cells[a]->flux_y[k] / wy[a]));
      }
      if (scale > 0.0) worst_recombination = std::max(worst_recombination, std::abs(combo - direct[k]) / scale);
    }
  }
  r.rejected = s.rejected();
  std::ostringstream os;
  os << "binary128; binary64 evaluation: " << b64_failures << " H-terms outside the set; "
     << "max |sum c_A H_A - U*| / sum |c_A| (|U_A| + |F_A/S_x| + |G_A/S_y|) = " << worst_recombination << "; "
     << rejected_note(s);
  r.detail = os.str();
  return r;
}

RoundTripStats recovery_roundtrip(std::int64_t n, std::uint64_t seed, double tolerance, const SampleRanges& ranges,
                                  const RecoveryOptions& opts, double residual_tolerance) {
  SampleRanges rr = ranges;
  rr.min_relative_margin = 0.0;
  StateSampler s(seed, EosParams(5.0 / 3.0), rr);
  RoundTripStats st;
  st.result.name = "recovery round trip";
  for (std::int64_t k = 0; k < n; ++k) {
    const PrimitiveState v = s.draw_raw();
    const ConservedState u = prim_to_cons(v, s.eos());
    ++st.result.samples;
    if (!is_admissible(u)) {
      ++st.unrepresentable;
      ++st.result.failures;
      continue;
    }
    const double w2 = 1.0 / (1.0 - v.speed_sq());
    const double cond = kEps * w2 * (1.0 + v.rho / v.pressure);
    RecoveryResult out;
    try {
      out = recover(u, s.eos(), opts);
    } catch (const Error&) {
      ++st.recovery_errors;
      ++st.result.failures;
      if (cond * 100.0 <= tolerance) ++st.well_conditioned_failures;
      continue;
    }
    const double speed = std::sqrt(v.speed_sq());
    const double vel_scale = speed > 0.0 ? speed : 1.0;
    const double e_rho = std::abs(out.prim.rho - v.rho) / v.rho;
    const double e_vel =
        std::max(std::abs(out.prim.vel_x - v.vel_x), std::abs(out.prim.vel_y - v.vel_y)) / vel_scale;
    const double e_p = std::abs(out.prim.pressure - v.pressure) / v.pressure;
    const double err = std::max({e_rho, e_vel, e_p});
    st.max_err_rho = std::max(st.max_err_rho, e_rho);
    st.max_err_vel = std::max(st.max_err_vel, e_vel);
    st.max_err_p = std::max(st.max_err_p, e_p);
    const double res = std::abs(pressure_residual(u, s.eos(), out.prim.pressure)) / std::max(u[3], 1.0);
    st.max_rel_error = std::max(st.max_rel_error, err);
    st.max_residual = std::max(st.max_residual, res);
    st.max_conditioned = std::max(st.max_conditioned, err / cond);
    if (err > tolerance) {
      ++st.result.failures;
      if (cond * 100.0 <= tolerance) ++st.well_conditioned_failures;
    }
    if (res > residual_tolerance) ++st.residual_failures;
  }
  st.result.worst = st.max_rel_error;
  std::ostringstream os;
  os << "max rel error " << st.max_rel_error << " (rho " << st.max_err_rho << ", vel " << st.max_err_vel << ", p "
     << st.max_err_p << "; tolerance " << tolerance << "), max error / (eps W^2 (1 + rho/p)) " << st.max_conditioned
     << ", failures with eps W^2 (1 + rho/p) <= tolerance/100: " << st.well_conditioned_failures << ", max residual "
     << st.max_residual << " (" << st.residual_failures << " above " << residual_tolerance << "), unrepresentable "
     << st.unrepresentable << ", recovery errors " << st.recovery_errors;
  st.result.detail = os.str();
  return st;
}

std::vector<SuiteResult> run_all(std::int64_t n, std::uint64_t seed) {
  SampleRanges rt;
  rt.max_lorentz = 100.0;
  return {convexity(n, seed),
          scaling(n, seed + 1),
          positive_combination(n, seed + 2),
          flux_closure(n, seed + 3),
          state_sanity(n, seed + 4),
          vertex_state(n, seed + 5),
          vertex_h_terms(n, seed + 6),
          recovery_roundtrip(n, seed + 7, 1e-10, rt).result};
}

}  // namespace rhd::verify
