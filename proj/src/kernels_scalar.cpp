// Scalar reference kernels. Each element is evaluated through the public
// physics/riemann functions so these sweeps define the expected results of
// the vector variants.

#include <algorithm>
#include <cmath>
#include <limits>

#include "rhd/kernels.hpp"
#include "rhd/riemann.hpp"

namespace rhd::kernels {

namespace {

PrimitiveState prim_at(const CellView& c, std::size_t e) {
  return {c.rho[e], c.vel_x[e], c.vel_y[e], c.pressure[e]};
}

CellState state_at(const CellView& c, std::size_t e) {
  CellState s;
  s.prim = prim_at(c, e);
  for (std::size_t k = 0; k < 4; ++k) {
    s.cons[k] = c.cons[k][e];
    s.flux_x[k] = c.flux_x[k][e];
    s.flux_y[k] = c.flux_y[k][e];
  }
  return s;
}

void cell_terms(std::size_t n, double gamma, const CellView& cells, const CellTermsOut& out) {
  const EosParams eos(gamma);
  for (std::size_t e = 0; e < n; ++e) {
    const PrimitiveState prim = prim_at(cells, e);
    ConservedState u;
    for (std::size_t k = 0; k < 4; ++k) u[k] = cells.cons[k][e];
    const auto ex = eigenvalues(prim, eos, Axis::x);
    const auto ey = eigenvalues(prim, eos, Axis::y);
    out.lam1_x[e] = ex.lam1;
    out.lam4_x[e] = ex.lam4;
    out.lam1_y[e] = ey.lam1;
    out.lam4_y[e] = ey.lam4;
    const FluxVector fx = physical_flux(prim, u, Axis::x);
    const FluxVector fy = physical_flux(prim, u, Axis::y);
    for (std::size_t k = 0; k < 4; ++k) {
      out.flux_x[k][e] = fx[k];
      out.flux_y[k][e] = fy[k];
    }
  }
}

double min_crossing_time(std::size_t n, double dx, double dy, const CellView& c) {
  double t = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < n; ++e) {
    const double ax = std::max(std::abs(c.lam1_x[e]), std::abs(c.lam4_x[e]));
    const double ay = std::max(std::abs(c.lam1_y[e]), std::abs(c.lam4_y[e]));
    t = std::min(t, std::min(dx / ax, dy / ay));
  }
  return t;
}

void edge_hll(std::size_t n, Axis axis, double gamma, double alpha, const CellView& left, const CellView& right,
              const MutPtr4& out) {
  const EosParams eos(gamma);
  for (std::size_t e = 0; e < n; ++e) {
    const CellState l = state_at(left, e);
    const CellState r = state_at(right, e);
    const auto speeds = wave_speeds_1d(l.prim, r.prim, eos, axis, alpha);
    const FluxVector f = hll_flux_1d(l, r, axis, speeds);
    for (std::size_t k = 0; k < 4; ++k) out[k][e] = f[k];
  }
}

void corner_hll(std::size_t n, double gamma, double alpha, const CellView& ld, const CellView& rd,
                const CellView& lu, const CellView& ru, const CornerOut& out) {
  const EosParams eos(gamma);
  for (std::size_t e = 0; e < n; ++e) {
    const CornerStates c{state_at(ld, e), state_at(rd, e), state_at(lu, e), state_at(ru, e)};
    const WaveSpeeds2D s = wave_speeds_2d(c, eos, alpha);
    const CornerFlux f = hll_flux_2d(c, s);
    const bool on = s.subsonic();
    out.s_left_minus[e] = on ? s.left_minus() : 0.0;
    out.s_right_plus[e] = on ? s.right_plus() : 0.0;
    out.s_down_minus[e] = on ? s.down_minus() : 0.0;
    out.s_up_plus[e] = on ? s.up_plus() : 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      out.flux_x[k][e] = f.flux_x[k];
      out.flux_y[k][e] = f.flux_y[k];
    }
  }
}

double composite(std::size_t n, double w, const Ptr4& f1d, const double* s_pos_lo, const double* s_neg_hi,
                 const Ptr4& f2d_lo, const Ptr4& f2d_hi, const MutPtr4& out) {
  double min_weight = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < n; ++e) {
    const double sp = s_pos_lo[e];
    const double sn = s_neg_hi[e];
    min_weight = std::min(min_weight, 1.0 - w * (sp - sn));
    for (std::size_t k = 0; k < 4; ++k) {
      const double f = f1d[k][e];
      out[k][e] = f + w * (sp * (f2d_lo[k][e] - f) - sn * (f2d_hi[k][e] - f));
    }
  }
  return min_weight;
}

void update(std::size_t n, double cx, double cy, const MutPtr4& u, const Ptr4& f_lo, const Ptr4& f_hi,
            const Ptr4& g_lo, const Ptr4& g_hi) {
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t e = 0; e < n; ++e) {
      u[k][e] = u[k][e] - cx * (f_hi[k][e] - f_lo[k][e]) - cy * (g_hi[k][e] - g_lo[k][e]);
    }
  }
}

}  // namespace

CellView CellView::shifted(std::ptrdiff_t d) const noexcept {
  auto mv = [d](const double* p) { return p == nullptr ? p : p + d; };
  CellView v;
  v.rho = mv(rho);
  v.vel_x = mv(vel_x);
  v.vel_y = mv(vel_y);
  v.pressure = mv(pressure);
  for (std::size_t k = 0; k < 4; ++k) {
    v.cons[k] = mv(cons[k]);
    v.flux_x[k] = mv(flux_x[k]);
    v.flux_y[k] = mv(flux_y[k]);
  }
  v.lam1_x = mv(lam1_x);
  v.lam4_x = mv(lam4_x);
  v.lam1_y = mv(lam1_y);
  v.lam4_y = mv(lam4_y);
  return v;
}

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{Isa::scalar, &cell_terms, &min_crossing_time, &edge_hll,
                                 &corner_hll, &composite, &update};
  return table;
}

}  // namespace rhd::kernels
