// Acceptance checks, one PASS/FAIL line per criterion.
//
//   rhd_acceptance            all nine
//   rhd_acceptance 3 4        a subset
//
// Exit status is 0 when every selected criterion passes, 1 otherwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rhd/app.hpp"
#include "rhd/config.hpp"
#include "rhd/errors.hpp"
#include "rhd/problems.hpp"
#include "rhd/solver.hpp"
#include "rhd/verify.hpp"

using namespace rhd;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "NOT ") + what;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(const char* f, double v) {
  char b[64];
  std::snprintf(b, sizeof b, f, v);
  return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string scratch_dir() {
  const auto p = std::filesystem::temp_directory_path() / "rhd_acceptance";
  std::filesystem::create_directories(p);
  return p.string();
}

RunConfig quiet_config() {
  RunConfig c;
  c.output_dir = scratch_dir();
  c.emit_field = false;
  c.emit_report = false;
  return c;
}

double number(const Report& r, const std::string& key) {
  const std::string v = r.get(key);
  if (v.empty()) throw Error("report has no '" + key + "'");
  return std::stod(v);
}

// -- 1: sine-wave orders ------------------------------------------------------
Verdict sine_orders() {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig c = quiet_config();
  c.command = "converge";
  c.problem = "sine";
  c.n_list = {20, 40, 80, 160};
  std::ostringstream sink;
  const Report r = app::converge(c, sink);

  const int ns[4] = {20, 40, 80, 160};
  const char* norms[3] = {"l1", "l2", "linf"};
  const double err[3][4] = {{5.521e-2, 2.705e-2, 1.338e-2, 6.710e-3},
                            {6.146e-2, 3.003e-2, 1.486e-2, 7.452e-3},
                            {8.683e-2, 4.241e-2, 2.101e-2, 1.054e-2}};
  const double ord[3][3] = {{1.029, 1.016, 0.996}, {1.033, 1.015, 0.996}, {1.034, 1.013, 0.996}};
  Verdict v;
  double worst = 0.0;
  for (int q = 0; q < 3; ++q) {
    std::string line = std::string(norms[q]) + " orders";
    for (int k = 1; k < 4; ++k) {
      const double o = number(r, std::string(norms[q]) + "_order_n" + std::to_string(ns[k]));
      worst = std::max(worst, std::abs(o - ord[q][k - 1]));
      line += fmt(" %.3f", o);
    }
    v.note(line);
  }
  v.require(worst <= 0.06, "all orders within 0.06 of the reference orders (max deviation " + fmt("%.3f", worst) + ")");
  // informative: magnitudes within a factor 2
  double ratio = 1.0;
  for (int q = 0; q < 3; ++q) {
    for (int k = 0; k < 4; ++k) {
      const double e = number(r, std::string(norms[q]) + "_error_n" + std::to_string(ns[k]));
      ratio = std::max({ratio, e / err[q][k], err[q][k] / e});
    }
  }
  v.note("error magnitudes within factor " + fmt("%.3f", ratio) + " of the reference errors" + (ratio <= 2.0 ? "" : " (above 2)"));
  const double t = seconds_since(t0);
  v.require(t < 120.0, "runtime " + fmt("%.1f", t) + " s < 120 s");
  return v;
}

// -- 2: vortex orders ---------------------------------------------------------
Verdict vortex_orders() {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig c = quiet_config();
  c.command = "converge";
  c.problem = "vortex";
  c.n_list = {20, 40, 80};
  std::ostringstream sink;
  const Report r = app::converge(c, sink);  // an audit failure throws
  Verdict v;
  const double o40 = number(r, "l1_order_n40");
  const double o80 = number(r, "l1_order_n80");
  v.require(std::abs(o40 - 0.818) <= 0.1 && std::abs(o80 - 0.894) <= 0.1,
            "l1 orders " + fmt("%.3f", o40) + fmt(" %.3f", o80) + " within 0.1 of 0.818 0.894");
  v.note("l1 errors" + fmt(" %.3e", number(r, "l1_error_n20")) + fmt(" %.3e", number(r, "l1_error_n40")) +
         fmt(" %.3e", number(r, "l1_error_n80")));
  const double rho = number(r, "core_rho");
  const double p = number(r, "core_p");
  v.require(rho >= 1e-15 && rho <= 1e-13, "min rho " + fmt("%.3e", rho) + " in [1e-15, 1e-13]");
  v.require(p >= 1e-21 && p <= 1e-18, "min p " + fmt("%.3e", p) + " in [1e-21, 1e-18]");
  v.note("audit clean");
  const double t = seconds_since(t0);
  v.require(t < 300.0, "runtime " + fmt("%.1f", t) + " s < 300 s");
  return v;
}

// Seeds follow the verify command: base seed + suite position.
constexpr std::uint64_t kSeed = 12345;
constexpr std::int64_t kDraws = 100000;

void suite(Verdict& v, const verify::SuiteResult& r) {
  v.require(r.passed(), r.name + ": " + std::to_string(r.failures) + " failures in " + std::to_string(r.samples));
}

// -- 3: vertex solver ---------------------------------------------------------
Verdict vertex_suites() {
  Verdict v;
  suite(v, verify::vertex_state(kDraws, kSeed + 5));
  suite(v, verify::vertex_h_terms(kDraws, kSeed + 6));
  return v;
}

// -- 4: admissible set --------------------------------------------------------
Verdict set_suites() {
  Verdict v;
  suite(v, verify::convexity(kDraws, kSeed + 0));
  suite(v, verify::scaling(kDraws, kSeed + 1));
  suite(v, verify::positive_combination(kDraws, kSeed + 2));
  suite(v, verify::flux_closure(kDraws, kSeed + 3));
  return v;
}

// -- 5: recovery --------------------------------------------------------------
Verdict recovery() {
  verify::SampleRanges ranges;
  ranges.max_lorentz = 100.0;
  const auto st = verify::recovery_roundtrip(kDraws, kSeed + 7, 1e-10, ranges);
  Verdict v;
  v.require(st.result.failures == 0, "max relative error " + fmt("%.3e", st.max_rel_error) + " <= 1e-10 (" +
                                         std::to_string(st.result.failures) + " of " +
                                         std::to_string(st.result.samples) + " above)");
  v.require(st.residual_failures == 0, "max residual " + fmt("%.2e", st.max_residual) + " <= 1e-12 max(E, 1)");
  v.note("errors within " + fmt("%.1f", st.max_conditioned) + " x eps W^2 (1 + rho/p); " +
         std::to_string(st.well_conditioned_failures) + " failures where that bound is <= 1e-12");
  return v;
}

// -- 6: scheme sanity ---------------------------------------------------------
Verdict sanity() {
  Verdict v;
  const EosParams eos(5.0 / 3.0);
  SolverConfig cfg;
  cfg.dt_rule = DtRule::signal;

  {
    const Grid g(16, 12, 0.0, 1.0, 0.0, 1.0);
    const ConservedState u0 = prim_to_cons({0.5, 0.6, -0.7, 0.01}, eos);
    Field f(g);
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) f.set_cell(i, j, u0);
    }
    Solver s(f, BoundarySpec::uniform(BoundaryKind::periodic), eos, cfg);
    for (int n = 0; n < 100; ++n) s.advance(s.compute_dt());
    double dev = 0.0;
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
          if (u0[k] != 0.0) dev = std::max(dev, std::abs(s.field().cell(i, j)[k] - u0[k]) / std::abs(u0[k]));
        }
      }
    }
    v.require(dev <= 1e-13, "uniform field after 100 steps, max relative change " + fmt("%.2e", dev));
  }
  {
    double worst = 0.0;
    for (const char* name : {"sine", "vortex"}) {
      const ProblemSpec spec = make_problem(name);
      Solver s(initialize(spec, spec.grid(48, 48), InitSampling::average), spec.bcs, spec.eos(), cfg);
      ConservedState prev = s.field().total();
      for (int n = 0; n < 50; ++n) {
        s.advance(s.compute_dt());
        const ConservedState now = s.field().total();
        for (std::size_t k = 0; k < 4; ++k) {
          if (prev[k] != 0.0) worst = std::max(worst, std::abs(now[k] - prev[k]) / std::abs(prev[k]));
        }
        prev = now;
      }
    }
    v.require(worst <= 1e-12, "conservation per step, max relative change " + fmt("%.2e", worst));
  }
  {
    const Grid g(64, 8, -0.5, 0.5, 0.0, 0.125);
    Field f(g);
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) {
        const PrimitiveState w = g.x_center(i) < 0.0 ? PrimitiveState{10.0, 0.5, 0.0, 13.33}
                                                      : PrimitiveState{1.0, -0.3, 0.0, 1e-6};
        f.set_cell(i, j, prim_to_cons(w, eos));
      }
    }
    BoundarySpec bcs = BoundarySpec::uniform(BoundaryKind::periodic);
    bcs[Side::x_min].kind = BoundaryKind::outflow;
    bcs[Side::x_max].kind = BoundaryKind::outflow;
    SolverConfig split_cfg = cfg;
    split_cfg.mode = SolverMode::dimension_split;
    Solver a(f, bcs, eos, cfg);
    Solver b(f, bcs, eos, split_cfg);
    bool same = true;
    for (int n = 0; n < 100 && same; ++n) {
      const double dt = a.compute_dt();
      same = dt == b.compute_dt();
      a.advance(dt);
      b.advance(dt);
    }
    for (std::size_t k = 0; k < 4 && same; ++k) {
      same = std::memcmp(a.field().component(k).data(), b.field().component(k).data(),
                         a.field().size() * sizeof(double)) == 0;
    }
    v.require(same, "split and multidimensional bitwise equal on y-invariant data (100 steps)");
  }
  return v;
}

// -- 7: PCP stress --------------------------------------------------------------
Verdict stress() {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig c = quiet_config();
  c.problem = "rp2";
  c.nx = c.ny = 100;
  c.pcp_audit = true;
  std::ostringstream sink;
  const Report r = app::run(c, sink);
  Verdict v;
  v.require(r.get("audit_passed") == "true" && number(r, "final_time") == 0.8,
            "completed to t = 0.8 in " + r.get("steps") + " steps with the audit on");
  v.require(number(r, "p_min") > 0.0, "min p over the run " + fmt("%.3e", number(r, "p_min")) + " > 0");
  v.note("min rho " + fmt("%.3e", number(r, "rho_min")) + ", max W " + fmt("%.3f", number(r, "lorentz_max")));
  const double t = seconds_since(t0);
  v.require(t < 300.0, "runtime " + fmt("%.1f", t) + " s < 300 s");
  return v;
}

// -- 8: explosion symmetry ------------------------------------------------------
Verdict symmetry() {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig c = quiet_config();
  c.command = "compare-symmetry";
  c.problem = "explosion";
  c.nx = c.ny = 64;
  std::ostringstream sink;
  const Report r = app::compare_symmetry(c, sink);
  Verdict v;
  const double ratio = number(r, "ratio");
  v.require(ratio < 1.0, "deviation ratio multidimensional / split " + fmt("%.5f", ratio) + " < 1 (" +
                             fmt("%.5f", number(r, "symmetry_deviation_multidimensional")) + " / " +
                             fmt("%.5f", number(r, "symmetry_deviation_dimension_split")) + ")");
  const double t = seconds_since(t0);
  v.require(t < 60.0, "runtime " + fmt("%.1f", t) + " s < 60 s");
  return v;
}

// -- 9: jets --------------------------------------------------------------------
Verdict jets() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  // (gamma, M_r) as quoted for the six configurations
  const double quoted[6][2] = {{7.089, 9.971},  {22.366, 31.316},   {70.712, 98.962},
                               {7.088, 354.371}, {22.366, 1118.090}, {70.712, 35356.152}};
  const auto sig3 = [](double x) { return fmt("%.3g", x); };
  const auto cfgs = standard_jet_configs();
  bool match = true;
  std::string listed;
  for (std::size_t k = 0; k < 6; ++k) {
    match = match && sig3(cfgs[k].gamma_beam) == sig3(quoted[k][0]) && sig3(cfgs[k].mach_rel) == sig3(quoted[k][1]);
    listed += (k ? " " : "") + fmt("(%.5g", cfgs[k].gamma_beam) + fmt(", %.8g)", cfgs[k].mach_rel);
  }
  v.require(match, "six (gamma, M_r) match to 3 significant figures " + listed);

  RunConfig c = quiet_config();
  c.problem = "jet_hot_1";
  c.nx = 60;
  c.ny = 150;
  c.t_end = 5.0;
  c.pcp_audit = true;
  std::ostringstream sink;
  const Report r = app::run(c, sink);
  v.require(r.get("audit_passed") == "true" && number(r, "final_time") == 5.0,
            "60x150 completed to t = 5 in " + r.get("steps") + " steps with the audit on");
  const double w = number(r, "lorentz_max");
  v.require(w >= 6.5, "max interior Lorentz factor " + fmt("%.3f", w) + " >= 6.5");
  const double t = seconds_since(t0);
  v.require(t < 600.0, "runtime " + fmt("%.1f", t) + " s < 600 s");
  return v;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "sine-wave convergence orders", sine_orders},
      {2, "vortex convergence orders", vortex_orders},
      {3, "vertex solver admissibility suite", vertex_suites},
      {4, "admissible-set property suites", set_suites},
      {5, "primitive recovery round trip", recovery},
      {6, "scheme sanity", sanity},
      {7, "quadrant problem II PCP stress", stress},
      {8, "explosion symmetry", symmetry},
      {9, "hot jet feasibility", jets},
  };
  std::vector<int> wanted;
  for (int a = 1; a < argc; ++a) {
    const int id = std::atoi(argv[a]);
    if (id < 1 || id > 9) {
      std::cerr << "usage: " << argv[0] << " [criterion 1-9 ...]\n";
      return 2;
    }
    wanted.push_back(id);
  }
  bool ok = true;
  for (const Criterion& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("error: ") + e.what();
    }
    ok = ok && v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << v.detail << std::endl;
  }
  return ok ? 0 : 1;
}
