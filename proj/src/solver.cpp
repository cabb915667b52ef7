#include "rhd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rhd/errors.hpp"

namespace rhd {

namespace {

template <class V>
kernels::Ptr4 cptr(const std::array<V, 4>& a, std::size_t off) {
  return {a[0].data() + off, a[1].data() + off, a[2].data() + off, a[3].data() + off};
}

template <class V>
kernels::MutPtr4 mptr(std::array<V, 4>& a, std::size_t off) {
  return {a[0].data() + off, a[1].data() + off, a[2].data() + off, a[3].data() + off};
}

void resize4(std::array<std::vector<double>, 4>& a, std::size_t n) {
  for (auto& v : a) v.assign(n, 0.0);
}

}  // namespace

std::string_view to_string(SolverMode m) noexcept {
  return m == SolverMode::multidimensional ? "multidimensional" : "dimension_split";
}

SolverMode parse_mode(std::string_view s) {
  if (s == "multidimensional" || s == "multi" || s == "2d") return SolverMode::multidimensional;
  if (s == "dimension_split" || s == "split" || s == "1d") return SolverMode::dimension_split;
  throw ConfigError("unknown solver mode '" + std::string(s) + "'");
}

std::string_view to_string(DtRule r) noexcept { return r == DtRule::eigenvalue ? "eigenvalue" : "signal"; }

DtRule parse_dt_rule(std::string_view s) {
  if (s == "eigenvalue" || s == "eigen") return DtRule::eigenvalue;
  if (s == "signal") return DtRule::signal;
  throw ConfigError("unknown time step rule '" + std::string(s) + "' (expected eigenvalue or signal)");
}

void SolverConfig::validate() const {
  if (!(cfl_sigma > 0.0 && cfl_sigma <= 1.0)) {
    std::ostringstream msg;
    msg << "CFL number must satisfy 0 < sigma <= 1, got " << cfl_sigma;
    throw ConfigError(msg.str());
  }
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    std::ostringstream msg;
    msg << "wave-speed amplifier alpha must be >= 1, got " << alpha;
    throw ConfigError(msg.str());
  }
  recovery.validate();
}

void StateExtrema::merge(const StateExtrema& o) noexcept {
  rho_min = std::min(rho_min, o.rho_min);
  rho_max = std::max(rho_max, o.rho_max);
  p_min = std::min(p_min, o.p_min);
  p_max = std::max(p_max, o.p_max);
  lorentz_min = std::min(lorentz_min, o.lorentz_min);
  lorentz_max = std::max(lorentz_max, o.lorentz_max);
}

Solver::Solver(Field field, BoundarySpec bcs, EosParams eos, SolverConfig cfg, const kernels::KernelTable& kernels)
    : field_(std::move(field)), bcs_(bcs), eos_(eos), cfg_(cfg), kernels_(&kernels) {
  cfg_.validate();
  bcs_.validate();
  const Grid& g = field_.grid();
  const auto nx = static_cast<std::size_t>(g.nx());
  const auto ny = static_cast<std::size_t>(g.ny());
  const std::size_t cells = field_.size();
  for (auto* v : {&rho_, &vel_x_, &vel_y_, &pressure_, &lam1_x_, &lam4_x_, &lam1_y_, &lam4_y_}) v->assign(cells, 0.0);
  resize4(phys_x_, cells);
  resize4(phys_y_, cells);
  resize4(edge_x_, (nx + 1) * ny);
  resize4(hat_x_, (nx + 1) * ny);
  resize4(edge_y_, nx * (ny + 1));
  resize4(hat_y_, nx * (ny + 1));
  const std::size_t vertices = (nx + 1) * (ny + 1);
  for (auto* v : {&s_left_minus_, &s_right_plus_, &s_down_minus_, &s_up_plus_}) v->assign(vertices, 0.0);
  resize4(vertex_f_, vertices);
  resize4(vertex_g_, vertices);

  audit_interior("initial data");
  refresh();
}

PrimitiveState Solver::prim(int i, int j) const noexcept {
  const auto e = field_.index(i, j);
  return {rho_[e], vel_x_[e], vel_y_[e], pressure_[e]};
}

kernels::CellView Solver::cell_view(int i, int j) const noexcept {
  const auto e = field_.index(i, j);
  kernels::CellView v;
  v.rho = rho_.data() + e;
  v.vel_x = vel_x_.data() + e;
  v.vel_y = vel_y_.data() + e;
  v.pressure = pressure_.data() + e;
  for (std::size_t k = 0; k < 4; ++k) {
    v.cons[k] = field_.component(k).data() + e;
    v.flux_x[k] = phys_x_[k].data() + e;
    v.flux_y[k] = phys_y_[k].data() + e;
  }
  v.lam1_x = lam1_x_.data() + e;
  v.lam4_x = lam4_x_.data() + e;
  v.lam1_y = lam1_y_.data() + e;
  v.lam4_y = lam4_y_.data() + e;
  return v;
}

void Solver::audit_interior(const char* stage) const {
  const Grid& g = field_.grid();
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const ConservedState u = field_.cell(i, j);
      if (is_admissible(u)) continue;
      const auto m = admissibility_margin(u);
      std::ostringstream msg;
      msg.precision(17);
      msg << "non-admissible state after " << stage << " at cell (" << i << ", " << j << "), t = " << field_.time
          << ": U = (" << u[0] << ", " << u[1] << ", " << u[2] << ", " << u[3] << "), D = " << m.mass
          << ", E - |(D, m)| = " << m.energy << "; sigma = " << cfg_.cfl_sigma << ", alpha = " << cfg_.alpha;
      throw PcpAuditError(msg.str(), i, j);
    }
  }
}

void Solver::refresh() {
  fill_ghosts(field_, bcs_, eos_);
  const Grid& g = field_.grid();

  StateExtrema ext;
  ext.rho_min = ext.p_min = ext.lorentz_min = std::numeric_limits<double>::infinity();
  ext.rho_max = ext.p_max = ext.lorentz_max = -std::numeric_limits<double>::infinity();

  for (int j = -1; j <= g.ny(); ++j) {
    for (int i = -1; i <= g.nx(); ++i) {
      const auto e = field_.index(i, j);
      const RecoveryResult r = recover(field_.cell(i, j), eos_, cfg_.recovery, pressure_[e]);
      rho_[e] = r.prim.rho;
      vel_x_[e] = r.prim.vel_x;
      vel_y_[e] = r.prim.vel_y;
      pressure_[e] = r.prim.pressure;
      ++recovery_stats_.calls;
      recovery_stats_.iterations += r.iterations;
      recovery_stats_.bisections += r.bisections;
      recovery_stats_.max_iterations = std::max(recovery_stats_.max_iterations, r.iterations);
      if (i < 0 || j < 0 || i >= g.nx() || j >= g.ny()) continue;
      const double w = 1.0 / std::sqrt(1.0 - r.prim.speed_sq());
      ext.rho_min = std::min(ext.rho_min, r.prim.rho);
      ext.rho_max = std::max(ext.rho_max, r.prim.rho);
      ext.p_min = std::min(ext.p_min, r.prim.pressure);
      ext.p_max = std::max(ext.p_max, r.prim.pressure);
      ext.lorentz_min = std::min(ext.lorentz_min, w);
      ext.lorentz_max = std::max(ext.lorentz_max, w);
    }
  }
  extrema_ = ext;

  kernels::CellTermsOut out;
  out.lam1_x = lam1_x_.data();
  out.lam4_x = lam4_x_.data();
  out.lam1_y = lam1_y_.data();
  out.lam4_y = lam4_y_.data();
  out.flux_x = mptr(phys_x_, 0);
  out.flux_y = mptr(phys_y_, 0);
  kernels_->cell_terms(field_.size(), eos_.gamma(), cell_view(-1, -1), out);
}

double Solver::compute_dt() const {
  const Grid& g = field_.grid();
  double t = std::numeric_limits<double>::infinity();
  // the ghost ring feeds the edge and vertex solvers too (an inflow beam exists only there at first)
  for (int j = -1; j <= g.ny(); ++j) {
    t = std::min(t, kernels_->min_crossing_time(static_cast<std::size_t>(g.nx()) + 2, g.dx(), g.dy(), cell_view(-1, j)));
  }
  if (cfg_.dt_rule == DtRule::signal) t /= cfg_.alpha;
  return cfg_.cfl_sigma * t;
}

void Solver::assemble_fluxes(double dt) {
  const Grid& g = field_.grid();
  const int nx = g.nx();
  const int ny = g.ny();
  const auto unx = static_cast<std::size_t>(nx);
  const double gamma = eos_.gamma();
  const double alpha = cfg_.alpha;
  const std::ptrdiff_t stride = field_.stride();

  // 1D edge fluxes
  for (int j = 0; j < ny; ++j) {
    const auto left = cell_view(-1, j);
    kernels_->edge_hll(unx + 1, Axis::x, gamma, alpha, left, left.shifted(1),
                       mptr(edge_x_, static_cast<std::size_t>(j) * (unx + 1)));
  }
  for (int j = -1; j < ny; ++j) {
    const auto below = cell_view(0, j);
    kernels_->edge_hll(unx, Axis::y, gamma, alpha, below, below.shifted(stride),
                       mptr(edge_y_, static_cast<std::size_t>(j + 1) * unx));
  }

  if (cfg_.mode == SolverMode::dimension_split) {
    hat_x_ = edge_x_;
    hat_y_ = edge_y_;
    last_min_weight_ = 1.0;
    return;
  }

  // vertex (i+1/2, j+1/2) for i, j in [-1, n-1]
  for (int j = -1; j < ny; ++j) {
    const auto ld = cell_view(-1, j);
    const std::size_t off = static_cast<std::size_t>(j + 1) * (unx + 1);
    kernels::CornerOut out;
    out.s_left_minus = s_left_minus_.data() + off;
    out.s_right_plus = s_right_plus_.data() + off;
    out.s_down_minus = s_down_minus_.data() + off;
    out.s_up_plus = s_up_plus_.data() + off;
    out.flux_x = mptr(vertex_f_, off);
    out.flux_y = mptr(vertex_g_, off);
    kernels_->corner_hll(unx + 1, gamma, alpha, ld, ld.shifted(1), ld.shifted(stride), ld.shifted(stride + 1), out);
  }

  double min_weight = std::numeric_limits<double>::infinity();
  // x-edge (i+1/2, j) sits between vertices (i+1/2, j-1/2) below and (i+1/2, j+1/2) above
  const double wx = dt / (2.0 * g.dy());
  for (int j = 0; j < ny; ++j) {
    const std::size_t e = static_cast<std::size_t>(j) * (unx + 1);
    const std::size_t lo = static_cast<std::size_t>(j) * (unx + 1);
    const std::size_t hi = lo + unx + 1;
    min_weight = std::min(min_weight, kernels_->composite(unx + 1, wx, cptr(edge_x_, e), s_up_plus_.data() + lo,
                                                          s_down_minus_.data() + hi, cptr(vertex_f_, lo),
                                                          cptr(vertex_f_, hi), mptr(hat_x_, e)));
  }
  // y-edge (i, j+1/2) sits between vertices (i-1/2, j+1/2) and (i+1/2, j+1/2)
  const double wy = dt / (2.0 * g.dx());
  for (int j = -1; j < ny; ++j) {
    const std::size_t e = static_cast<std::size_t>(j + 1) * unx;
    const std::size_t lo = static_cast<std::size_t>(j + 1) * (unx + 1);
    const std::size_t hi = lo + 1;
    min_weight = std::min(min_weight, kernels_->composite(unx, wy, cptr(edge_y_, e), s_right_plus_.data() + lo,
                                                          s_left_minus_.data() + hi, cptr(vertex_g_, lo),
                                                          cptr(vertex_g_, hi), mptr(hat_y_, e)));
  }
  last_min_weight_ = min_weight;
  if (min_weight < 0.0) {
    std::ostringstream msg;
    msg << "negative 1D flux weight " << min_weight << " (dt = " << dt << ", sigma = " << cfg_.cfl_sigma
        << ", alpha = " << cfg_.alpha << ")";
    throw CflViolationError(msg.str());
  }
}

FluxVector Solver::flux_x(int i, int j) const noexcept {
  const auto e = static_cast<std::size_t>(j) * static_cast<std::size_t>(field_.grid().nx() + 1) +
                 static_cast<std::size_t>(i + 1);
  return {hat_x_[0][e], hat_x_[1][e], hat_x_[2][e], hat_x_[3][e]};
}

FluxVector Solver::flux_y(int i, int j) const noexcept {
  const auto e = static_cast<std::size_t>(j + 1) * static_cast<std::size_t>(field_.grid().nx()) +
                 static_cast<std::size_t>(i);
  return {hat_y_[0][e], hat_y_[1][e], hat_y_[2][e], hat_y_[3][e]};
}

void Solver::apply_update(double dt) {
  const Grid& g = field_.grid();
  const auto unx = static_cast<std::size_t>(g.nx());
  const double cx = dt / g.dx();
  const double cy = dt / g.dy();
  std::array<std::span<double>, 4> u{field_.component(0), field_.component(1), field_.component(2),
                                     field_.component(3)};
  for (int j = 0; j < g.ny(); ++j) {
    const std::size_t c = field_.index(0, j);
    const std::size_t fx = static_cast<std::size_t>(j) * (unx + 1);
    const std::size_t gy = static_cast<std::size_t>(j) * unx;
    kernels_->update(unx, cx, cy, {u[0].data() + c, u[1].data() + c, u[2].data() + c, u[3].data() + c},
                     cptr(hat_x_, fx), cptr(hat_x_, fx + 1), cptr(hat_y_, gy), cptr(hat_y_, gy + unx));
  }
  field_.time += dt;
  if (cfg_.pcp_audit) audit_interior("update");
  refresh();
}

void Solver::advance(double dt) {
  assemble_fluxes(dt);
  apply_update(dt);
}

RunDiagnostics run(Solver& solver, const RunOptions& opts) {
  if (!(opts.t_end >= solver.time())) throw ConfigError("t_end lies before the current time");
  std::vector<double> stops;
  for (double t : opts.snapshot_times) {
    if (t >= solver.time() && t < opts.t_end) stops.push_back(t);
  }
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  stops.push_back(opts.t_end);

  RunDiagnostics d;
  d.pcp_audit = solver.config().pcp_audit;
  d.extrema = solver.extrema();

  std::size_t next = 0;
  while (next < stops.size()) {
    const double target = stops[next];
    if (solver.time() >= target) {
      if (target < opts.t_end && opts.on_snapshot) opts.on_snapshot(solver);
      ++next;
      continue;
    }
    if (opts.max_steps >= 0 && d.steps >= opts.max_steps) break;
    double dt = solver.compute_dt();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("time step is not positive and finite");
    bool landed = false;
    if (solver.time() + dt >= target) {
      dt = target - solver.time();
      landed = true;
      ++d.clamped_steps;
    }
    try {
      solver.advance(dt);
    } catch (const PcpAuditError&) {
      d.audit_passed = false;
      throw;
    }
    if (landed) solver.set_time(target);
    ++d.steps;
    d.extrema.merge(solver.extrema());
    d.min_flux_weight = std::min(d.min_flux_weight, solver.last_min_weight());
    if (opts.on_step) opts.on_step(solver, dt);
  }
  d.recovery = solver.recovery_stats();
  d.final_time = solver.time();
  return d;
}

}  // namespace rhd
