#pragma once

// Long-double reference evaluation of the HLL solvers and of one step of the
// first-order scheme, written term by term from the closed forms (edge
// fluxes from the clipped two-state HLL formula, vertex fluxes from the
// F**/G** combination with the transverse flux difference). Shares no code
// with the library beyond the input types.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "rhd/physics.hpp"

namespace oracle {

using R = long double;
using Vec = std::array<R, 4>;

struct Cell {
  R rho, u, v, p;
  Vec U, F, G;
  R lx1, lx4, ly1, ly4;
};

inline std::pair<R, R> eig(R un, R q, R cs2) {
  const R w = 1.0L / std::sqrt(1.0L - q);
  const R root = std::sqrt(1.0L - un * un - cs2 * (q - un * un));
  const R den = 1.0L - cs2 * q;
  const R cs = std::sqrt(cs2);
  return {(un * (1.0L - cs2) - cs / w * root) / den, (un * (1.0L - cs2) + cs / w * root) / den};
}

inline Cell cell(const rhd::PrimitiveState& w, R gamma) {
  Cell c{};
  c.rho = w.rho;
  c.u = w.vel_x;
  c.v = w.vel_y;
  c.p = w.pressure;
  const R q = c.u * c.u + c.v * c.v;
  const R lor = 1.0L / std::sqrt(1.0L - q);
  const R h = 1.0L + gamma / (gamma - 1.0L) * c.p / c.rho;
  const R d = c.rho * lor;
  c.U = {d, d * h * lor * c.u, d * h * lor * c.v, d * h * lor - c.p};
  c.F = {c.U[0] * c.u, c.U[1] * c.u + c.p, c.U[2] * c.u, (c.U[3] + c.p) * c.u};
  c.G = {c.U[0] * c.v, c.U[1] * c.v, c.U[2] * c.v + c.p, (c.U[3] + c.p) * c.v};
  const R cs2 = gamma * c.p / (c.rho * h);
  std::tie(c.lx1, c.lx4) = eig(c.u, q, cs2);
  std::tie(c.ly1, c.ly4) = eig(c.v, q, cs2);
  return c;
}

struct Speeds {
  R l, r, d, u;
  R lm() const { return std::min(l, 0.0L); }
  R rp() const { return std::max(r, 0.0L); }
  R dm() const { return std::min(d, 0.0L); }
  R up() const { return std::max(u, 0.0L); }
  bool subsonic() const { return l < 0 && 0 < r && d < 0 && 0 < u; }
};

inline Speeds corner_speeds(const Cell& ld, const Cell& rd, const Cell& lu, const Cell& ru, R alpha) {
  return {alpha * std::min({ld.lx1, rd.lx1, lu.lx1, ru.lx1}), alpha * std::max({ld.lx4, rd.lx4, lu.lx4, ru.lx4}),
          alpha * std::min({ld.ly1, rd.ly1, lu.ly1, ru.ly1}), alpha * std::max({ld.ly4, rd.ly4, lu.ly4, ru.ly4})};
}

/// (S+ F_a - S- F_b + S- S+ (U_b - U_a)) / (S+ - S-) with clipped speeds.
inline Vec hll(const Vec& fa, const Vec& fb, const Vec& ua, const Vec& ub, R s_lo, R s_hi) {
  const R lo = std::min(s_lo, 0.0L);
  const R hi = std::max(s_hi, 0.0L);
  Vec out{};
  if (hi - lo == 0) return fa;
  for (int k = 0; k < 4; ++k) out[k] = (hi * fa[k] - lo * fb[k] + lo * hi * (ub[k] - ua[k])) / (hi - lo);
  return out;
}

inline Vec edge_x(const Cell& a, const Cell& b, R alpha) {
  return hll(a.F, b.F, a.U, b.U, alpha * std::min(a.lx1, b.lx1), alpha * std::max(a.lx4, b.lx4));
}
inline Vec edge_y(const Cell& a, const Cell& b, R alpha) {
  return hll(a.G, b.G, a.U, b.U, alpha * std::min(a.ly1, b.ly1), alpha * std::max(a.ly4, b.ly4));
}

struct VertexFlux {
  Vec f, g;
};

inline VertexFlux vertex_flux(const Cell& ld, const Cell& rd, const Cell& lu, const Cell& ru, const Speeds& s) {
  const Vec fu = hll(lu.F, ru.F, lu.U, ru.U, s.l, s.r);
  const Vec fd = hll(ld.F, rd.F, ld.U, rd.U, s.l, s.r);
  const Vec gr = hll(rd.G, ru.G, rd.U, ru.U, s.d, s.u);
  const Vec gl = hll(ld.G, lu.G, ld.U, lu.U, s.d, s.u);
  VertexFlux out{};
  const R wy = s.up() - s.dm();
  const R wx = s.rp() - s.lm();
  for (int k = 0; k < 4; ++k) {
    const R gx = ru.G[k] - rd.G[k] - lu.G[k] + ld.G[k];
    const R fx = ru.F[k] - rd.F[k] - lu.F[k] + ld.F[k];
    if (wy > 0) {
      out.f[k] = (s.up() * fu[k] - s.dm() * fd[k] - (wx > 0 ? 2 * s.lm() * s.rp() / wx : 0.0L) * gx) / wy;
    } else {
      out.f[k] = 0.5L * (fu[k] + fd[k]);
    }
    if (wx > 0) {
      out.g[k] = (s.rp() * gr[k] - s.lm() * gl[k] - (wy > 0 ? 2 * s.dm() * s.up() / wy : 0.0L) * fx) / wx;
    } else {
      out.g[k] = 0.5L * (gr[k] + gl[k]);
    }
  }
  return out;
}

/// Fan average over the four quadrant states, subsonic vertex only.
inline Vec vertex_state(const Cell& ld, const Cell& rd, const Cell& lu, const Cell& ru, const Speeds& s) {
  const R area = (s.r - s.l) * (s.u - s.d);
  Vec out{};
  for (int k = 0; k < 4; ++k) {
    out[k] = (s.r * s.u * ru.U[k] + s.l * s.d * ld.U[k] - s.r * s.d * rd.U[k] - s.l * s.u * lu.U[k]) / area -
             (s.u * (ru.F[k] - lu.F[k]) - s.d * (rd.F[k] - ld.F[k])) / area -
             (s.r * (ru.G[k] - rd.G[k]) - s.l * (lu.G[k] - ld.G[k])) / area;
  }
  return out;
}

/// H_A = U_A - F_A / S_x - G_A / S_y, with the coefficients c_A such that
/// U* = sum c_A H_A. Order LD, RD, LU, RU.
struct HTerms {
  std::array<Vec, 4> h;
  std::array<R, 4> c;
};

inline HTerms h_terms(const Cell& ld, const Cell& rd, const Cell& lu, const Cell& ru, const Speeds& s) {
  const R b = (s.r - s.l) * (s.u - s.d);
  const Cell* cells[4] = {&ld, &rd, &lu, &ru};
  const R sx[4] = {s.l, s.r, s.l, s.r};
  const R sy[4] = {s.d, s.d, s.u, s.u};
  HTerms out{};
  out.c = {s.l * s.d / b, -s.r * s.d / b, -s.l * s.u / b, s.r * s.u / b};
  for (int a = 0; a < 4; ++a) {
    for (int k = 0; k < 4; ++k) out.h[a][k] = cells[a]->U[k] - cells[a]->F[k] / sx[a] - cells[a]->G[k] / sy[a];
  }
  return out;
}

/// One forward Euler step on a periodic nx x ny grid given cell primitives
/// (j-outer) and conserved averages. A vertex that is not subsonic
/// contributes nothing. Returns the updated conserved vectors.
struct StepResult {
  std::vector<Vec> u;
  std::vector<Vec> flux_x;  ///< edge (i+1/2, j) at j * nx + i
  std::vector<Vec> flux_y;  ///< edge (i, j+1/2)
};

inline StepResult periodic_step(int nx, int ny, R dx, R dy, R gamma, R alpha, R dt,
                                const std::vector<rhd::PrimitiveState>& prim, const std::vector<Vec>& cons,
                                bool multidimensional) {
  std::vector<Cell> c;
  c.reserve(prim.size());
  for (std::size_t e = 0; e < prim.size(); ++e) {
    Cell x = cell(prim[e], gamma);
    x.U = cons[e];
    // fluxes from the stored conserved vector, as the scheme does
    const R p = x.p;
    x.F = {x.U[0] * x.u, x.U[1] * x.u + p, x.U[2] * x.u, (x.U[3] + p) * x.u};
    x.G = {x.U[0] * x.v, x.U[1] * x.v, x.U[2] * x.v + p, (x.U[3] + p) * x.v};
    c.push_back(x);
  }
  const auto at = [&](int i, int j) -> const Cell& {
    i = (i % nx + nx) % nx;
    j = (j % ny + ny) % ny;
    return c[static_cast<std::size_t>(j) * nx + i];
  };
  // vertex (i+1/2, j+1/2) keyed by (i, j)
  std::vector<Speeds> vs(c.size());
  std::vector<VertexFlux> vf(c.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Cell& ld = at(i, j);
      const Cell& rd = at(i + 1, j);
      const Cell& lu = at(i, j + 1);
      const Cell& ru = at(i + 1, j + 1);
      const std::size_t e = static_cast<std::size_t>(j) * nx + i;
      vs[e] = corner_speeds(ld, rd, lu, ru, alpha);
      vf[e] = vertex_flux(ld, rd, lu, ru, vs[e]);
    }
  }
  const auto vid = [&](int i, int j) {
    i = (i % nx + nx) % nx;
    j = (j % ny + ny) % ny;
    return static_cast<std::size_t>(j) * nx + i;
  };
  StepResult out;
  out.flux_x.resize(c.size());
  out.flux_y.resize(c.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t e = static_cast<std::size_t>(j) * nx + i;
      Vec f = edge_x(at(i, j), at(i + 1, j), alpha);
      Vec g = edge_y(at(i, j), at(i, j + 1), alpha);
      if (multidimensional) {
        const Speeds& lo = vs[vid(i, j - 1)];
        const Speeds& hi = vs[vid(i, j)];
        const R sp = lo.subsonic() ? lo.up() : 0.0L;
        const R sn = hi.subsonic() ? hi.dm() : 0.0L;
        const R w = dt / (2 * dy);
        const Vec& flo = vf[vid(i, j - 1)].f;
        const Vec& fhi = vf[vid(i, j)].f;
        for (int k = 0; k < 4; ++k) f[k] = w * (sp * flo[k] - sn * fhi[k]) + (1 - w * (sp - sn)) * f[k];

        const Speeds& left = vs[vid(i - 1, j)];
        const Speeds& right = vs[vid(i, j)];
        const R tp = left.subsonic() ? left.rp() : 0.0L;
        const R tn = right.subsonic() ? right.lm() : 0.0L;
        const R wx = dt / (2 * dx);
        const Vec& glo = vf[vid(i - 1, j)].g;
        const Vec& ghi = vf[vid(i, j)].g;
        for (int k = 0; k < 4; ++k) g[k] = wx * (tp * glo[k] - tn * ghi[k]) + (1 - wx * (tp - tn)) * g[k];
      }
      out.flux_x[e] = f;
      out.flux_y[e] = g;
    }
  }
  out.u.resize(c.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t e = static_cast<std::size_t>(j) * nx + i;
      const Vec& fl = out.flux_x[vid(i - 1, j)];
      const Vec& fr = out.flux_x[e];
      const Vec& gd = out.flux_y[vid(i, j - 1)];
      const Vec& gu = out.flux_y[e];
      for (int k = 0; k < 4; ++k) out.u[e][k] = c[e].U[k] - dt / dx * (fr[k] - fl[k]) - dt / dy * (gu[k] - gd[k]);
    }
  }
  return out;
}

/// sigma min(h / max|lambda|) over the cells, divided by alpha when `signal`.
inline R time_step(const std::vector<rhd::PrimitiveState>& prim, R gamma, R dx, R dy, R sigma, R alpha, bool signal) {
  R t = INFINITY;
  for (const auto& w : prim) {
    const Cell c = cell(w, gamma);
    t = std::min({t, dx / std::max(std::abs(c.lx1), std::abs(c.lx4)), dy / std::max(std::abs(c.ly1), std::abs(c.ly4))});
  }
  return sigma * (signal ? t / alpha : t);
}

}  // namespace oracle
