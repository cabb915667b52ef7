#pragma once

// State vectors, Gamma-law thermodynamics, physical fluxes and characteristic
// speeds for the 2D special relativistic Euler equations (c = 1).

#include <array>
#include <cstddef>

namespace rhd {

enum class Axis { x = 0, y = 1 };

class EosParams {
 public:
  /// Throws ConfigError unless 1 < gamma <= 2.
  explicit EosParams(double adiabatic_index);

  double gamma() const noexcept { return gamma_; }

 private:
  double gamma_;
};

struct PrimitiveState {
  double rho = 0.0;
  double vel_x = 0.0;
  double vel_y = 0.0;
  double pressure = 0.0;

  double vel(Axis a) const noexcept { return a == Axis::x ? vel_x : vel_y; }
  double speed_sq() const noexcept { return vel_x * vel_x + vel_y * vel_y; }
};

/// Laboratory-frame conserved vector (D, m_x, m_y, E).
struct ConservedState {
  std::array<double, 4> q{};

  ConservedState() = default;
  ConservedState(double mass, double mom_x, double mom_y, double energy)
      : q{mass, mom_x, mom_y, energy} {}

  double mass() const noexcept { return q[0]; }
  double mom_x() const noexcept { return q[1]; }
  double mom_y() const noexcept { return q[2]; }
  double energy() const noexcept { return q[3]; }

  double& operator[](std::size_t k) noexcept { return q[k]; }
  double operator[](std::size_t k) const noexcept { return q[k]; }

  ConservedState& operator+=(const ConservedState& o) noexcept {
    for (std::size_t k = 0; k < 4; ++k) q[k] += o.q[k];
    return *this;
  }
  ConservedState& operator-=(const ConservedState& o) noexcept {
    for (std::size_t k = 0; k < 4; ++k) q[k] -= o.q[k];
    return *this;
  }
  ConservedState& operator*=(double s) noexcept {
    for (auto& c : q) c *= s;
    return *this;
  }
  friend ConservedState operator+(ConservedState a, const ConservedState& b) noexcept { return a += b; }
  friend ConservedState operator-(ConservedState a, const ConservedState& b) noexcept { return a -= b; }
  friend ConservedState operator*(double s, ConservedState a) noexcept { return a *= s; }
  friend bool operator==(const ConservedState&, const ConservedState&) = default;
};

/// Physical flux along one axis, laid out like ConservedState.
struct FluxVector {
  std::array<double, 4> q{};

  FluxVector() = default;
  FluxVector(double mass, double mom_x, double mom_y, double energy)
      : q{mass, mom_x, mom_y, energy} {}

  double& operator[](std::size_t k) noexcept { return q[k]; }
  double operator[](std::size_t k) const noexcept { return q[k]; }

  bool is_finite() const noexcept;
  friend bool operator==(const FluxVector&, const FluxVector&) = default;
};

struct Thermo {
  double eint = 0.0;      ///< specific internal energy
  double enthalpy = 0.0;  ///< specific enthalpy h = 1 + e + p/rho
  double sound_speed = 0.0;
};

/// Ordered characteristic speeds along one axis: lam1 <= lam2 = lam3 <= lam4.
struct EigenSpeeds {
  double lam1 = 0.0;
  double lam2 = 0.0;
  double lam3 = 0.0;
  double lam4 = 0.0;
};

struct AdmissibilityMargin {
  double mass = 0.0;    ///< D
  double energy = 0.0;  ///< E - sqrt(D^2 + |m|^2)
};

/// 1/sqrt(1 - u^2 - v^2). Throws DomainError for |u| >= 1.
double lorentz_factor(double vel_x, double vel_y);

Thermo thermo(const PrimitiveState& prim, const EosParams& eos) noexcept;

/// Squared sound speed, c_s^2 = Gamma p / (rho h).
double sound_speed_sq(const PrimitiveState& prim, const EosParams& eos) noexcept;

/// rho > 0, p > 0, |u| < 1.
bool is_valid(const PrimitiveState& prim) noexcept;

ConservedState prim_to_cons(const PrimitiveState& prim, const EosParams& eos);

FluxVector physical_flux(const PrimitiveState& prim, const ConservedState& cons, Axis axis) noexcept;

EigenSpeeds eigenvalues(const PrimitiveState& prim, const EosParams& eos, Axis axis) noexcept;

bool is_admissible(const ConservedState& cons) noexcept;
AdmissibilityMargin admissibility_margin(const ConservedState& cons) noexcept;

}  // namespace rhd
