#include "rhd/app.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>

#include "rhd/errors.hpp"
#include "rhd/verify.hpp"

namespace rhd::app {

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

void apply_kernels(const RunConfig& cfg) {
  if (cfg.kernels == "scalar") kernels::select(kernels::Isa::scalar);
  if (cfg.kernels == "avx2") kernels::select(kernels::Isa::avx2);
}

PrimitiveLookup lookup(const Solver& s) {
  return [&s](int i, int j) { return s.prim(i, j); };
}

void emit_files(const RunConfig& cfg, const Solver& s, const std::string& stem) {
  if (cfg.emit_field) write_field(join_path(cfg.output_dir, stem + ".field"), s);
  if (cfg.emit_cuts) {
    const auto rho = interior_density(s.field(), s.eos());
    write_cuts(join_path(cfg.output_dir, stem + ".cuts"), s.field().grid(), rho);
  }
  if (cfg.emit_schlieren) write_schlieren(join_path(cfg.output_dir, stem + ".schlieren"), s.field().grid(), lookup(s));
}

void add_diagnostics(Report& r, const RunDiagnostics& d, const Solver& s) {
  r.add("final_time", d.final_time);
  r.add("steps", d.steps);
  r.add("clamped_steps", d.clamped_steps);
  r.add("rho_min", d.extrema.rho_min);
  r.add("rho_max", d.extrema.rho_max);
  r.add("p_min", d.extrema.p_min);
  r.add("p_max", d.extrema.p_max);
  r.add("lorentz_max", d.extrema.lorentz_max);
  r.add("final_rho_min", s.extrema().rho_min);
  r.add("final_p_min", s.extrema().p_min);
  r.add("final_lorentz_max", s.extrema().lorentz_max);
  r.add("min_flux_weight", d.min_flux_weight);
  r.add("pcp_audit", d.pcp_audit);
  r.add("audit_passed", d.audit_passed);
  r.add("recovery_calls", d.recovery.calls);
  r.add("recovery_mean_iterations", d.recovery.mean_iterations());
  r.add("recovery_max_iterations", d.recovery.max_iterations);
  r.add("recovery_bisections", d.recovery.bisections);
}

void add_setup(Report& r, const RunConfig& cfg, const ProblemSpec& spec, int nx, int ny) {
  r.add("problem", spec.name);
  r.add("nx", nx);
  r.add("ny", ny);
  r.add("gamma", spec.gamma);
  r.add("cfl", cfg.cfl);
  r.add("alpha", cfg.alpha);
  r.add("mode", std::string(to_string(cfg.mode)));
  r.add("dt_rule", std::string(to_string(cfg.dt_rule)));
  r.add("init", std::string(to_string(cfg.init)));
  r.add("t_end", cfg.end_time(spec));
  if (spec.jet) {
    r.add("jet_v_beam", spec.jet->v_beam);
    r.add("jet_mach_beam", spec.jet->mach_beam);
    r.add("jet_rho_beam", spec.jet->rho_beam);
    r.add("jet_p_beam", spec.jet->p_beam);
    r.add("jet_lorentz", spec.jet->gamma_beam);
    r.add("jet_mach_rel", spec.jet->mach_rel);
  }
}

struct Finished {
  Solver solver;
  RunDiagnostics diag;
};

Finished simulate(const RunConfig& cfg, const ProblemSpec& spec, int nx, int ny, SolverMode mode,
                  const std::function<void(const Solver&)>& on_snapshot = {}) {
  RunConfig c = cfg;
  c.mode = mode;
  Solver s(initialize(spec, spec.grid(nx, ny), cfg.init), spec.bcs, spec.eos(), c.solver_config());
  RunOptions opts;
  opts.t_end = cfg.end_time(spec);
  opts.snapshot_times = cfg.snapshots;
  opts.on_snapshot = on_snapshot;
  opts.max_steps = cfg.max_steps;
  RunDiagnostics d = rhd::run(s, opts);
  return {std::move(s), d};
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e)) return kValidation;
  if (dynamic_cast<const PcpAuditError*>(&e) || dynamic_cast<const CflViolationError*>(&e)) return kPcpFailure;
  if (dynamic_cast<const AdmissibilityError*>(&e) || dynamic_cast<const ConvergenceError*>(&e)) {
    return kRecoveryFailure;
  }
  return kUnexpected;
}

Report run(const RunConfig& cfg, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  apply_kernels(cfg);
  const ProblemSpec spec = make_problem(cfg.problem);
  const int nx = cfg.grid_nx(spec);
  const int ny = cfg.grid_ny(spec);
  ensure_directory(cfg.output_dir);

  const auto snapshot = [&](const Solver& s) { emit_files(cfg, s, spec.name + "_t" + time_tag(s.time())); };
  Finished f = simulate(cfg, spec, nx, ny, cfg.mode, snapshot);

  Report r;
  add_setup(r, cfg, spec, nx, ny);
  r.add("kernels", std::string(kernels::to_string(f.solver.kernels().isa)));
  add_diagnostics(r, f.diag, f.solver);
  if (spec.exact) {
    const ErrorNorms e = error_norms(f.solver.field(), f.solver.eos(), spec.exact, f.solver.time());
    r.add("l1_error", e.l1);
    r.add("l2_error", e.l2);
    r.add("linf_error", e.linf);
  }
  if (nx == ny && spec.name == "explosion") r.add("symmetry_deviation", symmetry_deviation(f.solver.field(), f.solver.eos()));

  emit_files(cfg, f.solver, spec.name);
  if (cfg.emit_report) r.write(join_path(cfg.output_dir, spec.name + ".report"));
  r.write(out);
  out << "# wall time " << std::fixed << std::setprecision(2) << elapsed(t0) << " s\n" << std::defaultfloat;
  return r;
}

Report converge(const RunConfig& cfg, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  apply_kernels(cfg);
  const ProblemSpec spec = make_problem(cfg.problem);
  if (!spec.exact) throw ConfigError("problem '" + spec.name + "' has no exact solution");
  const std::vector<int> ns = cfg.series(spec);

  std::vector<double> l1, l2, linf;
  for (int n : ns) {
    Finished f = simulate(cfg, spec, n, n, cfg.mode);
    const ErrorNorms e = error_norms(f.solver.field(), f.solver.eos(), spec.exact, f.solver.time());
    l1.push_back(e.l1);
    l2.push_back(e.l2);
    linf.push_back(e.linf);
  }
  const auto o1 = convergence_orders(l1);
  const auto o2 = convergence_orders(l2);
  const auto oinf = convergence_orders(linf);

  Report r;
  r.add("problem", spec.name);
  r.add("gamma", spec.gamma);
  r.add("cfl", cfg.cfl);
  r.add("alpha", cfg.alpha);
  r.add("mode", std::string(to_string(cfg.mode)));
  r.add("dt_rule", std::string(to_string(cfg.dt_rule)));
  r.add("init", std::string(to_string(cfg.init)));
  r.add("t_end", cfg.end_time(spec));
  std::string list;
  for (int n : ns) list += (list.empty() ? "" : ",") + std::to_string(n);
  r.add("n_list", list);
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const std::string tag = "_n" + std::to_string(ns[k]);
    r.add("l1_error" + tag, l1[k]);
    if (k > 0) r.add("l1_order" + tag, o1[k - 1]);
    r.add("l2_error" + tag, l2[k]);
    if (k > 0) r.add("l2_order" + tag, o2[k - 1]);
    r.add("linf_error" + tag, linf[k]);
    if (k > 0) r.add("linf_order" + tag, oinf[k - 1]);
  }
  if (spec.name == "vortex") {
    const PrimitiveState core = vortex_core();
    r.add("core_rho", core.rho);
    r.add("core_p", core.pressure);
    // smallest values the finest grid actually samples
    const Grid g = spec.grid(ns.back(), ns.back());
    double rmin = std::numeric_limits<double>::infinity();
    double pmin = rmin;
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) {
        const PrimitiveState v = spec.initial(g.x_center(i), g.y_center(j));
        rmin = std::min(rmin, v.rho);
        pmin = std::min(pmin, v.pressure);
      }
    }
    r.add("initial_rho_min_sampled", rmin);
    r.add("initial_p_min_sampled", pmin);
  }

  if (cfg.emit_report) {
    ensure_directory(cfg.output_dir);
    r.write(join_path(cfg.output_dir, spec.name + "_convergence.report"));
  }
  out << "#    N      l1 error  order      l2 error  order    linf error  order\n";
  for (std::size_t k = 0; k < ns.size(); ++k) {
    char line[160];
    const auto ord = [&](const std::vector<double>& o) { return k == 0 ? 0.0 : o[k - 1]; };
    std::snprintf(line, sizeof line, "# %4d  %12.4e  %5.3f  %12.4e  %5.3f  %12.4e  %5.3f\n", ns[k], l1[k], ord(o1),
                  l2[k], ord(o2), linf[k], ord(oinf));
    out << line;
  }
  r.write(out);
  out << "# wall time " << std::fixed << std::setprecision(2) << elapsed(t0) << " s\n" << std::defaultfloat;
  return r;
}

int verify(const RunConfig& cfg, std::ostream& out, Report* report) {
  const auto& names = verify_suite_names();
  const auto wanted = [&](const std::string& n) {
    return cfg.suites.empty() || std::find(cfg.suites.begin(), cfg.suites.end(), n) != cfg.suites.end();
  };
  Report r;
  r.add("samples", cfg.samples);
  r.add("seed", static_cast<std::int64_t>(cfg.seed));
  bool set_failed = false;
  bool recovery_failed = false;
  for (std::size_t k = 0; k < names.size(); ++k) {
    const std::string& name = names[k];
    if (!wanted(name)) continue;
    const std::uint64_t seed = cfg.seed + k;
    verify::SuiteResult res;
    if (name == "convexity") res = verify::convexity(cfg.samples, seed);
    if (name == "scaling") res = verify::scaling(cfg.samples, seed);
    if (name == "combination") res = verify::positive_combination(cfg.samples, seed);
    if (name == "closure") res = verify::flux_closure(cfg.samples, seed);
    if (name == "sanity") res = verify::state_sanity(cfg.samples, seed);
    if (name == "vertex") res = verify::vertex_state(cfg.samples, seed);
    if (name == "hterms") res = verify::vertex_h_terms(cfg.samples, seed);
    if (name == "roundtrip") {
      verify::SampleRanges ranges;
      ranges.max_lorentz = 100.0;
      const auto st = verify::recovery_roundtrip(cfg.samples, seed, 1e-10, ranges);
      res = st.result;
      r.add("roundtrip_max_residual", st.max_residual);
      r.add("roundtrip_residual_failures", st.residual_failures);
      r.add("roundtrip_max_conditioned_error", st.max_conditioned);
      r.add("roundtrip_well_conditioned_failures", st.well_conditioned_failures);
      if (!res.passed() || st.residual_failures > 0) recovery_failed = true;
    } else if (!res.passed()) {
      set_failed = true;
    }
    r.add(name + "_samples", res.samples);
    r.add(name + "_failures", res.failures);
    r.add(name + "_worst", res.worst);
    out << (res.passed() ? "PASS " : "FAIL ") << res.name << ": samples " << res.samples << ", failures "
        << res.failures << ", worst " << res.worst << "\n     " << res.detail << '\n';
  }
  if (cfg.emit_report) {
    ensure_directory(cfg.output_dir);
    r.write(join_path(cfg.output_dir, "verify.report"));
  }
  if (report) *report = r;
  if (set_failed) return kPcpFailure;
  if (recovery_failed) return kRecoveryFailure;
  return kOk;
}

Report compare_symmetry(const RunConfig& cfg, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  apply_kernels(cfg);
  const ProblemSpec spec = make_problem("explosion");
  const int n = cfg.nx.value_or(64);
  if (cfg.ny && *cfg.ny != n) throw ConfigError("compare-symmetry needs a square grid");
  Report r;
  r.add("problem", spec.name);
  r.add("n", n);
  r.add("t_end", cfg.end_time(spec));
  r.add("cfl", cfg.cfl);
  r.add("alpha", cfg.alpha);
  r.add("dt_rule", std::string(to_string(cfg.dt_rule)));
  r.add("init", std::string(to_string(cfg.init)));
  if (cfg.emit_cuts) ensure_directory(cfg.output_dir);
  double dev[2] = {0.0, 0.0};
  const SolverMode modes[2] = {SolverMode::multidimensional, SolverMode::dimension_split};
  for (int k = 0; k < 2; ++k) {
    Finished f = simulate(cfg, spec, n, n, modes[k]);
    dev[k] = symmetry_deviation(f.solver.field(), f.solver.eos());
    r.add("symmetry_deviation_" + std::string(to_string(modes[k])), dev[k]);
    r.add("steps_" + std::string(to_string(modes[k])), f.diag.steps);
    if (cfg.emit_cuts) {
      const auto rho = interior_density(f.solver.field(), f.solver.eos());
      write_cuts(join_path(cfg.output_dir, "explosion_" + std::string(to_string(modes[k])) + ".cuts"),
                 f.solver.field().grid(), rho);
    }
  }
  r.add("ratio", dev[0] / dev[1]);
  if (cfg.emit_report) {
    ensure_directory(cfg.output_dir);
    r.write(join_path(cfg.output_dir, "explosion_symmetry.report"));
  }
  r.write(out);
  out << "# wall time " << std::fixed << std::setprecision(2) << elapsed(t0) << " s\n" << std::defaultfloat;
  return r;
}

int execute(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const Invocation inv = parse_config(argc, argv);
    if (!inv.help.empty()) {
      out << inv.help;
      return kOk;
    }
    const RunConfig& cfg = inv.config;
    if (cfg.command == "run") run(cfg, out);
    if (cfg.command == "converge") converge(cfg, out);
    if (cfg.command == "compare-symmetry") compare_symmetry(cfg, out);
    if (cfg.command == "verify") return verify(cfg, out);
    return kOk;
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    err << "rhd: " << e.what() << '\n';
    return code;
  }
}

}  // namespace rhd::app
