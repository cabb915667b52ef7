#include <cmath>
#include <vector>

#include "doctest.h"
#include "rhd/errors.hpp"
#include "rhd/problems.hpp"
#include "support/close.hpp"

using namespace rhd;
using testing::rel_close;

TEST_CASE("vortex amplitude and core") {
  CHECK(rel_close(vortex_alpha(), 0.36787860307746968, 1e-14));
  const PrimitiveState c = vortex_core();
  CHECK(rel_close(c.rho, 7.8337191621742198e-15, 1e-6));
  CHECK(rel_close(c.pressure, 1.7846587980823372e-20, 1e-6));
  // the core moves with the drift
  CHECK(rel_close(c.vel_x, -0.5, 1e-15));
  CHECK(rel_close(c.vel_y, -0.5, 1e-15));
}

TEST_CASE("vortex reference points") {
  const PrimitiveState a = vortex(0.0, 0.7, 0.3);
  CHECK(rel_close(a.rho, 0.35442658440978355, 1e-12));
  CHECK(rel_close(a.vel_x, -0.79142167370486694, 1e-12));
  CHECK(rel_close(a.vel_y, -0.062867489442699584, 1e-11));
  CHECK(rel_close(a.pressure, 0.23406517637965232, 1e-12));
  const PrimitiveState b = vortex(0.5, -1.2, 2.1);
  CHECK(rel_close(b.rho, 0.99848018666283897, 1e-12));
  CHECK(rel_close(b.vel_x, -0.54450316578008972, 1e-12));
  CHECK(rel_close(b.vel_y, -0.50364780047377785, 1e-12));
  CHECK(rel_close(b.pressure, 0.99787290827780532, 1e-12));
}

TEST_CASE("vortex is isentropic and subluminal") {
  for (double x = -4.5; x <= 4.5; x += 0.37) {
    for (double y = -4.5; y <= 4.5; y += 0.41) {
      const PrimitiveState w = vortex(0.3, x, y);
      REQUIRE(is_valid(w));
      REQUIRE(rel_close(w.pressure, std::pow(w.rho, 1.4), 1e-12));
    }
  }
  VortexParams strong;
  strong.strength = 20.0;
  CHECK_THROWS_AS(vortex(0.0, 0.0, 0.0, strong), DomainError);
}

TEST_CASE("vortex rotation balances the pressure gradient") {
  // at rest (no drift): d p / d r = rho h W^2 v_theta^2 / r, by centred differences
  VortexParams still;
  still.drift = 0.0;
  const double g = still.adiabatic_index;
  for (double r : {0.5, 1.0, 1.7, 2.5}) {
    const double h = 1e-5;
    const PrimitiveState w = vortex(0.0, r, 0.0, still);
    const double dp = (vortex(0.0, r + h, 0.0, still).pressure - vortex(0.0, r - h, 0.0, still).pressure) / (2 * h);
    const double vt = w.vel_y;
    const double enth = 1.0 + g / (g - 1.0) * w.pressure / w.rho;
    const double rhs = w.rho * enth * vt * vt / (1.0 - vt * vt) / r;
    CHECK(std::abs(dp - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("sine wave") {
  const PrimitiveState w = sine_wave(0.0, 0.125, 0.125);
  CHECK(rel_close(w.rho, 1.0 + kSineAmplitude, 1e-15));
  CHECK(rel_close(w.vel_x, 0.99 / std::sqrt(2.0), 1e-15));
  CHECK(w.pressure == 0.01);
  // advected along the diagonal at 0.99
  const double t = 0.3;
  const double s = 0.99 * t / std::sqrt(2.0);
  CHECK(rel_close(sine_wave(t, 0.2 + s, 0.7 + s).rho, sine_wave(0.0, 0.2, 0.7).rho, 1e-12));
}

TEST_CASE("explosion data") {
  CHECK(explosion_init(0.0, 0.0).pressure == 20.0);
  CHECK(explosion_init(0.05, 0.05).pressure == 20.0);
  CHECK(explosion_init(0.1, 0.0).pressure == 0.1);
  CHECK(explosion_init(0.3, 0.0).pressure == 0.1);
  CHECK(explosion_init(0.3, 0.0).rho == 1.0);
}

TEST_CASE("quadrant data and interface tie-breaks") {
  const PrimitiveState ll = riemann_quadrant_init(QuadrantVariant::rp1, -0.5, -0.5);
  CHECK(ll.rho == 0.5);
  CHECK(riemann_quadrant_init(QuadrantVariant::rp1, 0.0, 0.0).rho == 0.5);
  CHECK(riemann_quadrant_init(QuadrantVariant::rp1, 0.0, 0.5).vel_x == 0.99);
  CHECK(riemann_quadrant_init(QuadrantVariant::rp1, 0.5, 0.0).vel_y == 0.99);
  CHECK(riemann_quadrant_init(QuadrantVariant::rp1, 1e-300, 1e-300).pressure == 0.01);
  const PrimitiveState ur = riemann_quadrant_init(QuadrantVariant::rp2, 0.5, 0.5);
  CHECK(ur.pressure == 20.0);
  CHECK(riemann_quadrant_init(QuadrantVariant::rp2, -0.5, 0.5).vel_x == kRp2Vel);
  CHECK(riemann_quadrant_init(QuadrantVariant::rp2, 0.5, -0.5).vel_y == kRp2Vel);
  CHECK(riemann_quadrant_init(QuadrantVariant::rp2, -0.5, -0.5).rho == 0.01);
}

TEST_CASE("jet configurations") {
  const auto jets = standard_jet_configs();
  REQUIRE(jets.size() == 6);
  const double pb[6] = {0.003951352259365026, 0.004097449121509294, 0.0041124289584468598,
                        2.3536240721718814e-5, 2.3966375079777596e-5, 2.3995344183272126e-7};
  const double lor[6] = {7.088812050083359, 22.366272042129222, 70.712445951901742,
                         7.088812050083359, 22.366272042129222, 70.712445951901742};
  const double mr[6] = {9.9705596784487248, 31.315967890558025, 98.962061541184681,
                        354.37111824644539, 1118.0903642064293, 35356.152277576017};
  for (std::size_t k = 0; k < 6; ++k) {
    CAPTURE(k);
    CHECK(rel_close(jets[k].p_beam, pb[k], 1e-12));
    CHECK(rel_close(jets[k].gamma_beam, lor[k], 1e-10));
    CHECK(rel_close(jets[k].mach_rel, mr[k], 1e-10));
    CHECK(jets[k].model == (k < 3 ? JetModel::hot : JetModel::cold));
    CHECK(jets[k].ambient().pressure == jets[k].p_beam);
  }
  CHECK_THROWS_AS(jet_config(JetModel::hot, 1.0, 2.0), ConfigError);
  CHECK_THROWS_AS(jet_config(JetModel::hot, 0.9, 0.0), ConfigError);
  CHECK_THROWS_AS(jet_config(JetModel::hot, 0.9, 1.0), ConfigError);
}

TEST_CASE("jet problem geometry") {
  const ProblemSpec s = make_problem("jet_hot_1");
  CHECK(s.x_max == 12.0);
  CHECK(s.y_max == 30.0);
  CHECK(s.bcs[Side::x_min].kind == BoundaryKind::reflect);
  CHECK(s.bcs[Side::y_min].kind == BoundaryKind::inflow);
  CHECK(s.bcs[Side::y_min].inflow_state.vel_y == 0.99);
  REQUIRE(s.jet.has_value());
  CHECK(make_problem("jet").name == "jet_hot_1");
  CHECK(make_problem("jet_cold_3").y_max == 25.0);
}

TEST_CASE("problem registry") {
  for (const std::string& n : problem_names()) CHECK_NOTHROW(make_problem(n));
  CHECK_THROWS_AS(make_problem("sod"), ConfigError);
  CHECK(make_problem("vortex").x_min == -5.0);
  CHECK(make_problem("rp2").t_end == 0.8);
}

TEST_CASE("initial sampling") {
  CHECK(parse_init_sampling("center") == InitSampling::centre);
  CHECK(parse_init_sampling("avg") == InitSampling::average);
  CHECK_THROWS_AS(parse_init_sampling("corner"), ConfigError);
  CHECK(to_string(InitSampling::average) == "average");

  const ProblemSpec sine = make_problem("sine");
  const Grid g = sine.grid(16, 16);
  const Field c = initialize(sine, g, InitSampling::centre);
  const Field a = initialize(sine, g, InitSampling::average);
  // the cell average of a smooth wave is within O(h^2) of its centre value and
  // carries (nearly) exactly the mass of the wave: zero-mean sine, so D total = D(rho = 1)
  double diff = 0.0;
  for (int j = 0; j < 16; ++j) {
    for (int i = 0; i < 16; ++i) diff = std::max(diff, std::abs(a.cell(i, j)[0] - c.cell(i, j)[0]));
  }
  CHECK(diff > 1e-4);
  CHECK(diff < 0.2);
  const double lor = lorentz_factor(0.99 / std::sqrt(2.0), 0.99 / std::sqrt(2.0));
  CHECK(rel_close(a.total()[0], lor * g.area(), 1e-12));
  // constant data: both samplings agree to rounding
  const ProblemSpec ex = make_problem("explosion");
  const Field ec = initialize(ex, ex.grid(8, 8), InitSampling::centre);
  const Field ea = initialize(ex, ex.grid(8, 8), InitSampling::average);
  CHECK(rel_close(ea.cell(0, 0)[3], ec.cell(0, 0)[3], 1e-14));
}

TEST_CASE("error norms and orders") {
  const double l1[4] = {5.521e-2, 2.705e-2, 1.338e-2, 6.710e-3};
  const auto o = convergence_orders(l1);
  REQUIRE(o.size() == 3);
  CHECK(std::abs(o[0] - 1.029) < 5e-4);
  CHECK(std::abs(o[1] - 1.016) < 5e-4);
  CHECK(std::abs(o[2] - 0.996) < 5e-4);
  const double bad[2] = {1.0, 0.0};
  CHECK_THROWS_AS(convergence_orders(bad), DomainError);

  const Grid g(2, 2, 0.0, 1.0, 0.0, 1.0);
  const std::vector<double> rho = {1.0, 2.0, 3.0, 4.0};
  const auto zero = [](double, double, double) { return PrimitiveState{0.0, 0.0, 0.0, 1.0}; };
  const ErrorNorms e = error_norms(g, rho, zero, 0.0);
  CHECK(e.l1 == doctest::Approx(2.5));
  CHECK(e.l2 == doctest::Approx(std::sqrt(7.5)));
  CHECK(e.linf == 4.0);
}

TEST_CASE("rays and the symmetry metric") {
  const Grid g(4, 4, -1.0, 1.0, -1.0, 1.0);
  std::vector<double> v(16);
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) v[j * 4 + i] = 10.0 * j + i;
  }
  const Ray ax = axis_ray(g, v);
  REQUIRE(ax.coord.size() == 4);
  CHECK(ax.coord[0] == -0.75);
  CHECK(ax.value[0] == 1.5);  // mean of columns 1 and 2 in row 0
  const Ray dg = diagonal_ray(g, v);
  REQUIRE(dg.coord.size() == 4);
  CHECK(dg.value[3] == 33.0);
  CHECK(dg.coord[3] == doctest::Approx(0.75 * std::sqrt(2.0)));

  // radially symmetric data: small deviation; a rotated stripe pattern: large
  const Grid h(64, 64, -0.5, 0.5, -0.5, 0.5);
  std::vector<double> radial(64 * 64), stripes(64 * 64);
  for (int j = 0; j < 64; ++j) {
    for (int i = 0; i < 64; ++i) {
      const double x = h.x_center(i);
      const double y = h.y_center(j);
      radial[j * 64 + i] = std::exp(-10.0 * (x * x + y * y));
      stripes[j * 64 + i] = y;
    }
  }
  CHECK(symmetry_deviation(h, radial) < 5e-3);
  CHECK(symmetry_deviation(h, stripes) > 0.05);
  const Grid rect(8, 4, 0.0, 2.0, 0.0, 1.0);
  CHECK_THROWS_AS(symmetry_deviation(rect, std::vector<double>(32, 1.0)), ConfigError);
}

TEST_CASE("initialization rejects unphysical samples") {
  ProblemSpec s = make_problem("sine");
  s.initial = [](double, double) { return PrimitiveState{1.0, 1.0, 0.0, 1.0}; };
  CHECK_THROWS_AS(initialize(s, s.grid(4, 4)), ConfigError);
}
