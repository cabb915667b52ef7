#include "rhd/recovery.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rhd/errors.hpp"

namespace rhd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct PressureEquation {
  double mass;
  double mom;  // |m|
  double energy;
  double gap;  // E - |m|, exact when |m| is close to E
  double k;    // Gamma / (Gamma - 1)

  // (E + p)^2 - |m|^2 without the cancellation of forming E + p - |m|
  double radicand(double p) const { return (gap + p) * (energy + p + mom); }

  double lorentz(double p) const { return (energy + p) / std::sqrt(radicand(p)); }

  double residual(double p) const {
    const double w = lorentz(p);
    return mass * w + k * p * w * w - (energy + p);
  }

  double derivative(double p) const {
    const double ep = energy + p;
    const double s = radicand(p);
    const double w = ep / std::sqrt(s);
    const double dw = -w * mom * mom / (ep * s);
    return mass * dw + k * (w * w + 2.0 * p * w * dw) - 1.0;
  }
};

PressureEquation make_equation(const ConservedState& cons, const EosParams& eos) {
  const double g = eos.gamma();
  const double mom = std::hypot(cons[1], cons[2]);
  return {cons[0], mom, cons[3], cons[3] - mom, g / (g - 1.0)};
}

double bisect(double lo, double hi) {
  // geometric midpoint while the bracket spans decades
  return hi > 4.0 * lo ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
}

}  // namespace

void RecoveryOptions::validate() const {
  if (!(rel_tolerance > 0.0)) throw ConfigError("recovery rel_tolerance must be > 0");
  if (max_iterations < 1) throw ConfigError("recovery max_iterations must be >= 1");
  if (!(pressure_floor > 0.0)) throw ConfigError("recovery pressure_floor must be > 0");
}

double pressure_residual(const ConservedState& cons, const EosParams& eos, double pressure) {
  return make_equation(cons, eos).residual(pressure);
}

RecoveryResult recover(const ConservedState& cons, const EosParams& eos, const RecoveryOptions& opts,
                       double pressure_hint) {
  const auto margin = admissibility_margin(cons);
  if (!(margin.mass > 0.0 && margin.energy > 0.0)) {
    std::ostringstream msg;
    msg << "cannot recover primitives from non-admissible state: D = " << margin.mass
        << ", E - sqrt(D^2 + |m|^2) = " << margin.energy;
    throw AdmissibilityError(msg.str(), margin.mass, margin.energy);
  }

  const PressureEquation eq = make_equation(cons, eos);
  const double g = eos.gamma();

  // E + p > |m| keeps |u| < 1; for admissible input |m| < E so the floor wins.
  double lo = std::max(opts.pressure_floor, eq.mom - eq.energy + kEps * eq.energy);
  double f_lo = eq.residual(lo);
  // psi(0+) < 0 for every admissible state, so a root below the floor is
  // reached by shrinking lo towards zero
  while (!(f_lo < 0.0) && lo > 1e-280) {
    lo *= 0x1p-64;
    f_lo = eq.residual(lo);
  }
  if (!(f_lo < 0.0)) {
    std::ostringstream msg;
    msg << "pressure bracket: psi(lo) = " << f_lo << " is not negative at lo = " << lo;
    throw ConvergenceError(msg.str(), lo, lo);
  }
  // p < (Gamma - 1) E for every admissible state; doubling guards round-off.
  double hi = std::max((g - 1.0) * eq.energy, 2.0 * lo);
  int doublings = 0;
  while (!(eq.residual(hi) > 0.0)) {
    hi *= 2.0;
    if (++doublings > 2100 || !std::isfinite(hi)) {
      throw ConvergenceError("pressure bracket: no sign change found above", lo, hi);
    }
  }

  RecoveryResult out;
  double p = (pressure_hint > lo && pressure_hint < hi) ? pressure_hint : bisect(lo, hi);
  const double noise = 16.0 * kEps;
  bool converged = false;

  for (int it = 1; it <= opts.max_iterations; ++it) {
    out.iterations = it;
    const double f = eq.residual(p);
    if (f == 0.0) {
      converged = true;
      break;
    }
    if (f < 0.0) {
      lo = p;
    } else {
      hi = p;
    }
    if (std::abs(f) <= noise * (eq.energy + p)) {
      converged = true;
      break;
    }
    double next = p - f / eq.derivative(p);
    if (!(next > lo && next < hi)) {
      next = bisect(lo, hi);
      ++out.bisections;
    }
    const double step = std::abs(next - p);
    p = next;
    if (step <= opts.rel_tolerance * p || hi - lo <= opts.rel_tolerance * lo) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "pressure recovery did not converge in " << opts.max_iterations << " iterations";
    throw ConvergenceError(msg.str(), lo, hi);
  }

  const double ep = eq.energy + p;
  const double w = eq.lorentz(p);
  out.prim = {eq.mass / w, cons[1] / ep, cons[2] / ep, p};
  if (!is_valid(out.prim)) {
    throw ConvergenceError("recovered primitive state is not physical", lo, hi);
  }
  return out;
}

}  // namespace rhd
