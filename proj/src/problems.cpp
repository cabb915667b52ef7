#include "rhd/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rhd/errors.hpp"
#include "rhd/recovery.hpp"

namespace rhd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

double interp_at(const std::vector<double>& r, const std::vector<double>& v, double at) {
  if (at <= r.front()) return v.front();
  if (at >= r.back()) return v.back();
  const auto it = std::upper_bound(r.begin(), r.end(), at);
  const auto k = static_cast<std::size_t>(it - r.begin());
  const double s = (at - r[k - 1]) / (r[k] - r[k - 1]);
  return (1.0 - s) * v[k - 1] + s * v[k];
}

// positive half of a ray, as (radius, value) in increasing radius
void positive_half(const Ray& ray, std::vector<double>& r, std::vector<double>& v) {
  for (std::size_t k = 0; k < ray.coord.size(); ++k) {
    if (ray.coord[k] > 0.0) {
      r.push_back(ray.coord[k]);
      v.push_back(ray.value[k]);
    }
  }
}

void require_square(const Grid& g) {
  const double lx = g.x_max() - g.x_min();
  const double ly = g.y_max() - g.y_min();
  if (g.nx() != g.ny() || std::abs(lx - ly) > 1e-12 * std::max(lx, ly)) {
    throw ConfigError("symmetry comparison needs a square domain with nx == ny");
  }
}

void require_size(const Grid& g, std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(g.nx()) * static_cast<std::size_t>(g.ny())) {
    throw ConfigError("value array does not match the grid");
  }
}

}  // namespace

PrimitiveState sine_wave(double t, double x, double y) {
  const double phase = 2.0 * kPi * (x + y - 0.99 * kSqrt2 * t);
  return {1.0 + kSineAmplitude * std::sin(phase), 0.99 / kSqrt2, 0.99 / kSqrt2, 0.01};
}

double vortex_alpha(const VortexParams& vp) {
  const double g = vp.adiabatic_index;
  const double eps = vp.strength;
  return (g - 1.0) * eps * eps / (8.0 * g * kPi * kPi);
}

PrimitiveState vortex(double t, double x, double y, const VortexParams& vp) {
  const double g = vp.adiabatic_index;
  const double w = vp.drift;
  const double gw = 1.0 / std::sqrt(1.0 - w * w);
  const double shift = 0.5 * (gw - 1.0) * (x + y) + gw * t * w / kSqrt2;
  const double x0 = x + shift;
  const double y0 = y + shift;
  const double r2 = x0 * x0 + y0 * y0;

  const double a = vortex_alpha(vp) * std::exp(1.0 - r2);
  const double base = 1.0 - a;
  if (!(base > 0.0)) {
    std::ostringstream msg;
    msg << "vortex density base 1 - alpha e^(1-r^2) = " << base << " is not positive";
    throw DomainError(msg.str());
  }
  const double rho = std::pow(base, 1.0 / (g - 1.0));
  const double p = std::pow(rho, g);

  const double beta = 2.0 * g * a / (2.0 * g - 1.0 - g * a);
  const double f = std::sqrt(beta / (1.0 + beta * r2));
  const double u0 = -y0 * f;
  const double v0 = x0 * f;
  const double sum = u0 + v0;
  const double den = 1.0 - w * sum / kSqrt2;
  const double common = -w / kSqrt2 + gw * w * w / (2.0 * (gw + 1.0)) * sum;
  return {rho, (u0 / gw + common) / den, (v0 / gw + common) / den, p};
}

PrimitiveState vortex_core(const VortexParams& vp) { return vortex(0.0, 0.0, 0.0, vp); }

PrimitiveState explosion_init(double x, double y) {
  const double r = std::sqrt(x * x + y * y);
  return {1.0, 0.0, 0.0, r < 0.1 ? 20.0 : 0.1};
}

PrimitiveState riemann_quadrant_init(QuadrantVariant v, double x, double y) {
  const bool right = x > 0.0;
  const bool up = y > 0.0;
  if (v == QuadrantVariant::rp1) {
    if (right && up) return {0.1, 0.0, 0.0, 0.01};
    if (up) return {0.1, 0.99, 0.0, 1.0};
    if (!right) return {0.5, 0.0, 0.0, 1.0};
    return {0.1, 0.0, 0.99, 1.0};
  }
  if (right && up) return {0.1, 0.0, 0.0, 20.0};
  if (up) return {kRp2Rho, kRp2Vel, 0.0, 0.05};
  if (!right) return {0.01, 0.0, 0.0, 0.05};
  return {kRp2Rho, 0.0, kRp2Vel, 0.05};
}

JetConfig jet_config(JetModel model, double v_beam, double mach_beam, double adiabatic_index) {
  const EosParams eos(adiabatic_index);
  const double g = eos.gamma();
  if (!(v_beam > 0.0 && v_beam < 1.0)) throw ConfigError("jet beam speed must lie in (0, 1)");
  if (!(mach_beam > 0.0)) throw ConfigError("jet Mach number must be positive");
  const double cs = v_beam / mach_beam;
  const double cs2 = cs * cs;
  if (!(cs2 < g - 1.0)) {
    std::ostringstream msg;
    msg << "jet Mach number " << mach_beam << " too low: c_s^2 = " << cs2 << " >= Gamma - 1";
    throw ConfigError(msg.str());
  }
  JetConfig c;
  c.model = model;
  c.v_beam = v_beam;
  c.mach_beam = mach_beam;
  c.rho_beam = model == JetModel::hot ? 0.01 : 0.1;
  // c_s^2 = Gamma p / (rho h) solved for p at fixed rho
  c.p_beam = cs2 * c.rho_beam * (g - 1.0) / (g * (g - 1.0 - cs2));
  c.gamma_beam = 1.0 / std::sqrt(1.0 - v_beam * v_beam);
  c.gamma_sound = 1.0 / std::sqrt(1.0 - cs2);
  c.mach_rel = mach_beam * c.gamma_beam / c.gamma_sound;
  return c;
}

ProblemSpec jet_problem(const JetConfig& cfg, double adiabatic_index) {
  ProblemSpec s;
  s.name = cfg.model == JetModel::hot ? "jet_hot" : "jet_cold";
  s.x_min = 0.0;
  s.x_max = 12.0;
  s.y_min = 0.0;
  s.y_max = cfg.model == JetModel::hot ? 30.0 : 25.0;
  s.gamma = adiabatic_index;
  s.t_end = 30.0;
  s.bcs = BoundarySpec::uniform(BoundaryKind::outflow);
  s.bcs[Side::x_min].kind = BoundaryKind::reflect;
  auto& nozzle = s.bcs[Side::y_min];
  nozzle.kind = BoundaryKind::inflow;
  nozzle.inflow_state = cfg.beam();
  // symmetric about the reflecting axis x = 0, so the mirrored ghost column
  // of the nozzle row carries the beam too
  nozzle.inflow_lo = -cfg.nozzle_half_width;
  nozzle.inflow_hi = cfg.nozzle_half_width;
  const PrimitiveState ambient = cfg.ambient();
  s.initial = [ambient](double, double) { return ambient; };
  s.jet = cfg;
  return s;
}

std::vector<JetConfig> standard_jet_configs() {
  return {jet_config(JetModel::hot, 0.99, 1.72),   jet_config(JetModel::hot, 0.999, 1.72),
          jet_config(JetModel::hot, 0.9999, 1.72), jet_config(JetModel::cold, 0.99, 50.0),
          jet_config(JetModel::cold, 0.999, 50.0), jet_config(JetModel::cold, 0.9999, 500.0)};
}

std::vector<std::string> problem_names() {
  return {"sine", "vortex", "explosion", "rp1", "rp2", "jet_hot_1", "jet_hot_2", "jet_hot_3",
          "jet_cold_1", "jet_cold_2", "jet_cold_3"};
}

ProblemSpec make_problem(std::string_view name) {
  ProblemSpec s;
  s.name = std::string(name);
  if (name == "sine") {
    s.bcs = BoundarySpec::uniform(BoundaryKind::periodic);
    s.t_end = 0.1;
    s.initial = [](double x, double y) { return sine_wave(0.0, x, y); };
    s.exact = [](double t, double x, double y) { return sine_wave(t, x, y); };
    return s;
  }
  if (name == "vortex") {
    s.x_min = s.y_min = -5.0;
    s.x_max = s.y_max = 5.0;
    s.gamma = 1.4;
    s.bcs = BoundarySpec::uniform(BoundaryKind::periodic);
    s.t_end = 1.0;
    s.initial = [](double x, double y) { return vortex(0.0, x, y); };
    s.exact = [](double t, double x, double y) { return vortex(t, x, y); };
    return s;
  }
  if (name == "explosion") {
    s.x_min = s.y_min = -0.5;
    s.x_max = s.y_max = 0.5;
    s.bcs = BoundarySpec::uniform(BoundaryKind::outflow);
    s.t_end = 0.1;
    s.initial = explosion_init;
    return s;
  }
  if (name == "rp1" || name == "rp2") {
    const auto v = name == "rp1" ? QuadrantVariant::rp1 : QuadrantVariant::rp2;
    s.x_min = s.y_min = -1.0;
    s.x_max = s.y_max = 1.0;
    s.bcs = BoundarySpec::uniform(BoundaryKind::outflow);
    s.t_end = 0.8;
    s.initial = [v](double x, double y) { return riemann_quadrant_init(v, x, y); };
    return s;
  }
  const auto jets = standard_jet_configs();
  const std::string n(name);
  for (std::size_t k = 0; k < jets.size(); ++k) {
    const bool hot = k < 3;
    const std::string id = std::string(hot ? "jet_hot_" : "jet_cold_") + std::to_string(k % 3 + 1);
    if (n == id || (n == "jet" && k == 0)) {
      ProblemSpec js = jet_problem(jets[k]);
      js.name = id;
      if (!hot) js.t_end = (k == 3) ? 30.0 : (k == 4 ? 25.0 : 23.0);
      return js;
    }
  }
  throw ConfigError("unknown problem '" + n + "'");
}

std::string_view to_string(InitSampling s) noexcept { return s == InitSampling::centre ? "centre" : "average"; }

InitSampling parse_init_sampling(std::string_view s) {
  if (s == "centre" || s == "center") return InitSampling::centre;
  if (s == "average" || s == "avg") return InitSampling::average;
  throw ConfigError("unknown initial sampling '" + std::string(s) + "' (expected centre or average)");
}

Field initialize(const ProblemSpec& spec, const Grid& grid, InitSampling sampling) {
  if (!spec.initial) throw ConfigError("problem '" + spec.name + "' has no initial data");
  // 5-point Gauss-Legendre on [-1, 1]
  static constexpr std::array<double, 5> node{-0.90617984593866399, -0.53846931010568309, 0.0,
                                              0.53846931010568309, 0.90617984593866399};
  static constexpr std::array<double, 5> weight{0.23692688505618909, 0.47862867049936647, 0.56888888888888889,
                                                0.47862867049936647, 0.23692688505618909};
  const EosParams eos = spec.eos();
  Field f(grid);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const auto fail = [&] {
        std::ostringstream msg;
        msg << "initial data of '" << spec.name << "' not admissible at cell (" << i << ", " << j << ")";
        return ConfigError(msg.str());
      };
      const auto sample = [&](double x, double y) {
        const PrimitiveState v = spec.initial(x, y);
        if (!is_valid(v)) throw fail();
        return prim_to_cons(v, eos);
      };
      ConservedState u{};
      if (sampling == InitSampling::centre) {
        u = sample(grid.x_center(i), grid.y_center(j));
      } else {
        for (std::size_t a = 0; a < node.size(); ++a) {
          for (std::size_t b = 0; b < node.size(); ++b) {
            const double x = grid.x_center(i) + 0.5 * grid.dx() * node[a];
            const double y = grid.y_center(j) + 0.5 * grid.dy() * node[b];
            u += (0.25 * weight[a] * weight[b]) * sample(x, y);
          }
        }
      }
      if (!is_admissible(u)) throw fail();
      f.set_cell(i, j, u);
    }
  }
  return f;
}

std::vector<double> interior_density(const Field& field, const EosParams& eos) {
  const Grid& g = field.grid();
  std::vector<double> rho;
  rho.reserve(static_cast<std::size_t>(g.nx()) * static_cast<std::size_t>(g.ny()));
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) rho.push_back(recover_primitives(field.cell(i, j), eos).rho);
  }
  return rho;
}

ErrorNorms error_norms(const Grid& grid, std::span<const double> rho,
                       const std::function<PrimitiveState(double, double, double)>& exact, double t) {
  require_size(grid, rho);
  if (!exact) throw ConfigError("no exact solution available");
  double s1 = 0.0;
  double s2 = 0.0;
  double mx = 0.0;
  std::size_t e = 0;
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i, ++e) {
      const double err = std::abs(rho[e] - exact(t, grid.x_center(i), grid.y_center(j)).rho);
      s1 += err;
      s2 += err * err;
      mx = std::max(mx, err);
    }
  }
  const double cell = grid.dx() * grid.dy() / grid.area();
  return {s1 * cell, std::sqrt(s2 * cell), mx};
}

ErrorNorms error_norms(const Field& field, const EosParams& eos,
                       const std::function<PrimitiveState(double, double, double)>& exact, double t) {
  const auto rho = interior_density(field, eos);
  return error_norms(field.grid(), rho, exact, t);
}

std::vector<double> convergence_orders(std::span<const double> errors) {
  for (double e : errors) {
    if (!(e > 0.0)) throw DomainError("convergence order undefined for non-positive error");
  }
  std::vector<double> orders;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) orders.push_back(std::log2(errors[k] / errors[k + 1]));
  return orders;
}

Ray axis_ray(const Grid& g, std::span<const double> values) {
  require_size(g, values);
  const double xc = 0.5 * (g.x_min() + g.x_max());
  const double yc = 0.5 * (g.y_min() + g.y_max());
  const auto nx = static_cast<std::size_t>(g.nx());
  // column i0 with x_center(i0) <= xc < x_center(i0 + 1)
  int i0 = static_cast<int>(std::floor((xc - g.x_min()) / g.dx() - 0.5));
  i0 = std::clamp(i0, 0, std::max(0, g.nx() - 2));
  const int i1 = std::min(i0 + 1, g.nx() - 1);
  const double s = i1 == i0 ? 0.0 : std::clamp((xc - g.x_center(i0)) / g.dx(), 0.0, 1.0);
  Ray ray;
  for (int j = 0; j < g.ny(); ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * nx;
    const double a = values[row + static_cast<std::size_t>(i0)];
    const double b = values[row + static_cast<std::size_t>(i1)];
    ray.coord.push_back(g.y_center(j) - yc);
    ray.value.push_back(s == 0.0 ? a : (1.0 - s) * a + s * b);
  }
  return ray;
}

Ray diagonal_ray(const Grid& g, std::span<const double> values) {
  require_size(g, values);
  require_square(g);
  const double xc = 0.5 * (g.x_min() + g.x_max());
  const double yc = 0.5 * (g.y_min() + g.y_max());
  const auto nx = static_cast<std::size_t>(g.nx());
  Ray ray;
  for (int i = 0; i < g.nx(); ++i) {
    const double dx = g.x_center(i) - xc;
    const double dy = g.y_center(i) - yc;
    ray.coord.push_back(std::copysign(std::hypot(dx, dy), dx));
    ray.value.push_back(values[static_cast<std::size_t>(i) * nx + static_cast<std::size_t>(i)]);
  }
  return ray;
}

double symmetry_deviation(const Grid& g, std::span<const double> rho) {
  require_square(g);
  std::vector<double> ra, va, rd, vd;
  positive_half(axis_ray(g, rho), ra, va);
  positive_half(diagonal_ray(g, rho), rd, vd);
  if (ra.empty() || rd.empty()) throw ConfigError("grid too coarse for a symmetry comparison");
  const double h = std::min(g.dx(), g.dy());
  const double reach = std::min({0.5 * (g.x_max() - g.x_min()), ra.back(), rd.back()});
  double dev = 0.0;
  for (int k = 0;; ++k) {
    const double r = (k + 0.5) * h;
    if (r > reach) break;
    dev = std::max(dev, std::abs(interp_at(ra, va, r) - interp_at(rd, vd, r)));
  }
  return dev;
}

double symmetry_deviation(const Field& field, const EosParams& eos) {
  const auto rho = interior_density(field, eos);
  return symmetry_deviation(field.grid(), rho);
}

}  // namespace rhd
