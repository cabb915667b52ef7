#pragma once

// Test problems: initial/exact data, error norms, convergence orders and the
// radial symmetry metric for the explosion test.

#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rhd/boundary.hpp"
#include "rhd/field.hpp"
#include "rhd/physics.hpp"

namespace rhd {

enum class JetModel { hot, cold };

/// Pressure-matched jet injected along +y through a nozzle on y = 0.
struct JetConfig {
  JetModel model = JetModel::hot;
  double v_beam = 0.0;
  double mach_beam = 0.0;  ///< classical Mach number M_b = v_b / c_s
  double rho_beam = 0.0;
  double p_beam = 0.0;     ///< also the ambient pressure
  double gamma_beam = 0.0;   ///< Lorentz factor of the beam
  double gamma_sound = 0.0;  ///< 1 / sqrt(1 - c_s^2)
  double mach_rel = 0.0;     ///< M_b gamma_beam / gamma_sound
  double nozzle_half_width = 0.5;

  PrimitiveState beam() const noexcept { return {rho_beam, 0.0, v_beam, p_beam}; }
  PrimitiveState ambient() const noexcept { return {1.0, 0.0, 0.0, p_beam}; }
};

struct ProblemSpec {
  std::string name;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  double gamma = 5.0 / 3.0;
  BoundarySpec bcs{};
  double t_end = 0.0;
  std::function<PrimitiveState(double x, double y)> initial;
  /// Empty when no closed-form solution exists.
  std::function<PrimitiveState(double t, double x, double y)> exact;
  std::optional<JetConfig> jet;

  EosParams eos() const { return EosParams(gamma); }
  Grid grid(int nx, int ny) const { return Grid(nx, ny, x_min, x_max, y_min, y_max); }
};

// -- initial / exact data -----------------------------------------------------

inline constexpr double kSineAmplitude = 0.99999;

/// Density wave travelling diagonally at speed 0.99 through a uniform flow.
PrimitiveState sine_wave(double t, double x, double y);

struct VortexParams {
  double adiabatic_index = 1.4;
  double drift = 0.5 * std::numbers::sqrt2;  ///< w, along (-1, -1)
  double strength = 10.0828;                ///< epsilon
};

/// (Gamma - 1) eps^2 / (8 Gamma pi^2)
double vortex_alpha(const VortexParams& vp = {});

/// Isentropic vortex drifting with speed w along (-1, -1). Throws DomainError
/// if the density base 1 - alpha e^{1 - r^2} is not positive.
PrimitiveState vortex(double t, double x, double y, const VortexParams& vp = {});

/// Density and pressure at the vortex centre, where both are smallest.
PrimitiveState vortex_core(const VortexParams& vp = {});

/// Unit-density rest gas; p = 20 strictly inside r < 0.1, 0.1 elsewhere.
PrimitiveState explosion_init(double x, double y);

enum class QuadrantVariant { rp1, rp2 };

inline constexpr double kRp2Rho = 0.00414329639576;
inline constexpr double kRp2Vel = 0.9946418833556542;
/// Speed of the upper and right shocks of the second quadrant problem.
inline constexpr double kRp2ShockSpeed = -0.66525606186639;

/// Four-quadrant data; a point counts as right of the vertical interface
/// only for x > 0 and above the horizontal one only for y > 0.
PrimitiveState riemann_quadrant_init(QuadrantVariant v, double x, double y);

/// Throws ConfigError unless 0 < v_beam < 1, mach_beam > 0 and the implied
/// sound speed satisfies c_s^2 < Gamma - 1.
JetConfig jet_config(JetModel model, double v_beam, double mach_beam, double adiabatic_index = 5.0 / 3.0);

/// Problem definition for a jet (domain, BCs, default end time).
ProblemSpec jet_problem(const JetConfig& cfg, double adiabatic_index = 5.0 / 3.0);

/// The three hot and three cold configurations of the jet study, in order.
std::vector<JetConfig> standard_jet_configs();

/// Named problems: sine, vortex, explosion, rp1, rp2, jet_hot_{1,2,3},
/// jet_cold_{1,2,3} ("jet" is jet_hot_1). ConfigError for unknown names.
ProblemSpec make_problem(std::string_view name);
std::vector<std::string> problem_names();

enum class InitSampling {
  centre,   ///< point value at the cell centre
  average,  ///< cell average of the conserved variables, 5x5 Gauss-Legendre
};

std::string_view to_string(InitSampling s) noexcept;
/// "centre"/"center" or "average"/"avg"; ConfigError otherwise.
InitSampling parse_init_sampling(std::string_view s);

/// Initial conserved field. Throws ConfigError naming the cell if a sample is
/// not a valid primitive state or the result is not admissible.
Field initialize(const ProblemSpec& spec, const Grid& grid, InitSampling sampling = InitSampling::centre);

// -- diagnostics --------------------------------------------------------------

struct ErrorNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Rest-mass density of every interior cell, j-outer/i-inner.
std::vector<double> interior_density(const Field& field, const EosParams& eos);

/// Domain-averaged norms of rho - rho_exact(t, cell centre).
ErrorNorms error_norms(const Grid& grid, std::span<const double> rho,
                       const std::function<PrimitiveState(double, double, double)>& exact, double t);
ErrorNorms error_norms(const Field& field, const EosParams& eos,
                       const std::function<PrimitiveState(double, double, double)>& exact, double t);

/// log2(e_k / e_{k+1}); throws DomainError for a non-positive entry.
std::vector<double> convergence_orders(std::span<const double> errors);

/// Values along a line through the domain centre, ordered by signed distance.
struct Ray {
  std::vector<double> coord;
  std::vector<double> value;
};

/// Along x = centre: linear interpolation in x between the two columns
/// straddling the axis (or the column on it).
Ray axis_ray(const Grid& grid, std::span<const double> values);
/// Along the diagonal y = x through the centre: cells (i, i); square grids only.
Ray diagonal_ray(const Grid& grid, std::span<const double> values);

/// max_k |rho_axis(r_k) - rho_diag(r_k)| over r_k = (k + 1/2) min(dx, dy)
/// inside the domain radius, each ray interpolated linearly in radius (and
/// held constant inside its first sample). ConfigError on non-square grids.
double symmetry_deviation(const Grid& grid, std::span<const double> rho);
double symmetry_deviation(const Field& field, const EosParams& eos);

}  // namespace rhd
