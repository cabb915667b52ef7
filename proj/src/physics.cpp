#include "rhd/physics.hpp"

#include <cmath>
#include <sstream>

#include "rhd/errors.hpp"

namespace rhd {

EosParams::EosParams(double adiabatic_index) : gamma_(adiabatic_index) {
  if (!(adiabatic_index > 1.0 && adiabatic_index <= 2.0)) {
    std::ostringstream msg;
    msg << "adiabatic index must lie in (1, 2], got " << adiabatic_index;
    throw ConfigError(msg.str());
  }
}

bool FluxVector::is_finite() const noexcept {
  for (double c : q) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

double lorentz_factor(double vel_x, double vel_y) {
  const double q = vel_x * vel_x + vel_y * vel_y;
  if (!(q < 1.0)) {
    std::ostringstream msg;
    msg << "super-luminal velocity, |u|^2 = " << q;
    throw DomainError(msg.str());
  }
  return 1.0 / std::sqrt(1.0 - q);
}

Thermo thermo(const PrimitiveState& prim, const EosParams& eos) noexcept {
  const double g = eos.gamma();
  const double rho = prim.rho;
  const double p = prim.pressure;
  Thermo t;
  t.eint = p / ((g - 1.0) * rho);
  t.enthalpy = 1.0 + t.eint + p / rho;
  t.sound_speed = std::sqrt(g * p / (rho * t.enthalpy));
  return t;
}

double sound_speed_sq(const PrimitiveState& prim, const EosParams& eos) noexcept {
  const double g = eos.gamma();
  const double rho = prim.rho;
  const double p = prim.pressure;
  const double eint = p / ((g - 1.0) * rho);
  const double h = 1.0 + eint + p / rho;
  return g * p / (rho * h);
}

bool is_valid(const PrimitiveState& prim) noexcept {
  return prim.rho > 0.0 && prim.pressure > 0.0 && prim.speed_sq() < 1.0;
}

ConservedState prim_to_cons(const PrimitiveState& prim, const EosParams& eos) {
  const double w = lorentz_factor(prim.vel_x, prim.vel_y);
  const double h = thermo(prim, eos).enthalpy;
  const double mass = prim.rho * w;
  const double dhw = mass * h * w;
  return {mass, dhw * prim.vel_x, dhw * prim.vel_y, dhw - prim.pressure};
}

FluxVector physical_flux(const PrimitiveState& prim, const ConservedState& cons, Axis axis) noexcept {
  const double p = prim.pressure;
  if (axis == Axis::x) {
    const double un = prim.vel_x;
    return {cons[0] * un, cons[1] * un + p, cons[2] * un, (cons[3] + p) * un};
  }
  const double un = prim.vel_y;
  return {cons[0] * un, cons[1] * un, cons[2] * un + p, (cons[3] + p) * un};
}

EigenSpeeds eigenvalues(const PrimitiveState& prim, const EosParams& eos, Axis axis) noexcept {
  const double c2 = sound_speed_sq(prim, eos);
  const double cs = std::sqrt(c2);
  const double q = prim.speed_sq();
  const double un = prim.vel(axis);
  const double un2 = un * un;
  const double inv_w = std::sqrt(1.0 - q);
  const double root = std::sqrt(1.0 - un2 - c2 * (q - un2));
  const double den = 1.0 - c2 * q;
  const double a = un * (1.0 - c2);
  const double b = cs * inv_w * root;
  return {(a - b) / den, un, un, (a + b) / den};
}

AdmissibilityMargin admissibility_margin(const ConservedState& cons) noexcept {
  const double d = cons[0];
  const double norm = std::sqrt(d * d + cons[1] * cons[1] + cons[2] * cons[2]);
  return {d, cons[3] - norm};
}

bool is_admissible(const ConservedState& cons) noexcept {
  const auto m = admissibility_margin(cons);
  // NaN compares false on both tests
  return m.mass > 0.0 && m.energy > 0.0;
}

}  // namespace rhd
