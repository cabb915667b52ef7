#pragma once

// First-order finite-volume scheme with composite (edge + vertex) HLL fluxes
// and forward Euler time stepping.

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "rhd/boundary.hpp"
#include "rhd/field.hpp"
#include "rhd/kernels.hpp"
#include "rhd/recovery.hpp"

namespace rhd {

enum class SolverMode { multidimensional, dimension_split };

std::string_view to_string(SolverMode m) noexcept;
/// Accepts "multidimensional"/"multi"/"2d" and "dimension_split"/"split"/"1d".
SolverMode parse_mode(std::string_view s);

/// Speeds the time step is limited by.
enum class DtRule {
  eigenvalue,  ///< sigma min(h / max|lambda|)
  signal,      ///< sigma min(h / (alpha max|lambda|)): fans of the amplified
               ///< HLL speeds stay inside half a cell for sigma <= 1/2
};

std::string_view to_string(DtRule r) noexcept;
/// "eigenvalue"/"eigen" or "signal"; ConfigError otherwise.
DtRule parse_dt_rule(std::string_view s);

struct SolverConfig {
  double cfl_sigma = 0.45;
  double alpha = 2.0;
  SolverMode mode = SolverMode::multidimensional;
  DtRule dt_rule = DtRule::eigenvalue;
  bool pcp_audit = true;
  RecoveryOptions recovery{};

  /// 0 < sigma <= 1, alpha >= 1, recovery options valid; ConfigError otherwise.
  /// Admissibility is only guaranteed for sigma <= 1/2 and alpha = 2.
  void validate() const;
};

struct RecoveryStats {
  std::int64_t calls = 0;
  std::int64_t iterations = 0;
  std::int64_t bisections = 0;
  int max_iterations = 0;

  double mean_iterations() const noexcept { return calls > 0 ? double(iterations) / double(calls) : 0.0; }
};

/// Running extrema over interior cells.
struct StateExtrema {
  double rho_min = 0.0;
  double rho_max = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
  double lorentz_min = 0.0;
  double lorentz_max = 0.0;

  void merge(const StateExtrema& o) noexcept;
};

class Solver {
 public:
  /// Takes ownership of the field; fills ghosts and recovers primitives.
  /// Throws ConfigError for an invalid configuration and PcpAuditError if an
  /// interior cell is not admissible.
  Solver(Field field, BoundarySpec bcs, EosParams eos, SolverConfig cfg,
         const kernels::KernelTable& kernels = kernels::active());

  const Field& field() const noexcept { return field_; }
  const EosParams& eos() const noexcept { return eos_; }
  const SolverConfig& config() const noexcept { return cfg_; }
  const BoundarySpec& boundaries() const noexcept { return bcs_; }
  const kernels::KernelTable& kernels() const noexcept { return *kernels_; }
  double time() const noexcept { return field_.time; }
  /// Snaps the clock onto an output time after a clamped step.
  void set_time(double t) noexcept { field_.time = t; }

  /// Primitive state of cell (i, j), ghosts included, from the last recovery.
  PrimitiveState prim(int i, int j) const noexcept;

  /// sigma * min over interior and ghost-ring cells of
  /// min(dx / max|lam_x|, dy / max|lam_y|), further divided by alpha under
  /// DtRule::signal.
  double compute_dt() const;

  /// Builds F-hat on every x-edge and G-hat on every y-edge for this dt.
  /// Throws CflViolationError if a 1D flux weight comes out negative.
  void assemble_fluxes(double dt);

  /// Composite flux through the x-edge between cells (i, j) and (i+1, j),
  /// i in [-1, nx-1]; and through the y-edge between (i, j) and (i, j+1).
  FluxVector flux_x(int i, int j) const noexcept;
  FluxVector flux_y(int i, int j) const noexcept;

  /// Smallest 1D flux weight 1 - (dt / 2h)(S+ - S-) of the last assembly
  /// (1 in dimension-split mode).
  double last_min_weight() const noexcept { return last_min_weight_; }

  /// Conservative update with the assembled fluxes, then the admissibility
  /// audit (PcpAuditError) and primitive recovery of the new state.
  void apply_update(double dt);

  /// assemble_fluxes + apply_update.
  void advance(double dt);

  const RecoveryStats& recovery_stats() const noexcept { return recovery_stats_; }
  /// Extrema of the current state.
  const StateExtrema& extrema() const noexcept { return extrema_; }

 private:
  void refresh();
  void audit_interior(const char* stage) const;
  kernels::CellView cell_view(int i, int j) const noexcept;

  Field field_;
  BoundarySpec bcs_;
  EosParams eos_;
  SolverConfig cfg_;
  const kernels::KernelTable* kernels_;

  // per padded cell
  std::vector<double> rho_, vel_x_, vel_y_, pressure_;
  std::array<std::vector<double>, 4> phys_x_, phys_y_;
  std::vector<double> lam1_x_, lam4_x_, lam1_y_, lam4_y_;

  // per x-edge / y-edge: 1D HLL and composite fluxes
  std::array<std::vector<double>, 4> edge_x_, edge_y_, hat_x_, hat_y_;

  // per vertex: clipped speeds and vertex fluxes
  std::vector<double> s_left_minus_, s_right_plus_, s_down_minus_, s_up_plus_;
  std::array<std::vector<double>, 4> vertex_f_, vertex_g_;

  double last_min_weight_ = 1.0;
  RecoveryStats recovery_stats_;
  StateExtrema extrema_;
};

struct RunOptions {
  double t_end = 0.0;
  /// Intermediate output times; the time step is shortened to land on each.
  std::vector<double> snapshot_times;
  std::function<void(const Solver&)> on_snapshot;
  /// Called after every completed step.
  std::function<void(const Solver&, double dt)> on_step;
  std::int64_t max_steps = -1;
};

struct RunDiagnostics {
  std::int64_t steps = 0;
  std::int64_t clamped_steps = 0;
  StateExtrema extrema;
  RecoveryStats recovery;
  bool pcp_audit = false;
  bool audit_passed = true;
  double min_flux_weight = 1.0;
  double final_time = 0.0;
};

/// Advances to exactly t_end. Step size is sigma-limited and reduced, never
/// increased, to hit snapshot times and t_end.
RunDiagnostics run(Solver& solver, const RunOptions& opts);

}  // namespace rhd
