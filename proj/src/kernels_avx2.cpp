// AVX2 variants of the sweep kernels. Four cells per lane group; tails use
// masked loads/stores. Every expression mirrors the scalar reference
// operation for operation (no FMA contraction, same min/max selection rule)
// so the results are bitwise identical.

#include <immintrin.h>

#include <algorithm>
#include <cstdint>
#include <limits>

#include "rhd/kernels.hpp"

namespace rhd::kernels {

namespace {

struct D4 {
  __m256d v;
};

inline D4 operator+(D4 a, D4 b) { return {_mm256_add_pd(a.v, b.v)}; }
inline D4 operator-(D4 a, D4 b) { return {_mm256_sub_pd(a.v, b.v)}; }
inline D4 operator*(D4 a, D4 b) { return {_mm256_mul_pd(a.v, b.v)}; }
inline D4 operator/(D4 a, D4 b) { return {_mm256_div_pd(a.v, b.v)}; }
inline D4 splat(double x) { return {_mm256_set1_pd(x)}; }
inline D4 vsqrt(D4 a) { return {_mm256_sqrt_pd(a.v)}; }
// a < b ? a : b and a > b ? a : b, matching the scalar pick_min/pick_max
inline D4 vmin(D4 a, D4 b) { return {_mm256_min_pd(a.v, b.v)}; }
inline D4 vmax(D4 a, D4 b) { return {_mm256_max_pd(a.v, b.v)}; }
inline D4 vabs(D4 a) { return {_mm256_andnot_pd(_mm256_set1_pd(-0.0), a.v)}; }
/// mask ? a : b
inline D4 select(__m256d mask, D4 a, D4 b) { return {_mm256_blendv_pd(b.v, a.v, mask)}; }

inline __m256d cmp_ge(D4 a, D4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_GE_OQ); }
inline __m256d cmp_le(D4 a, D4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_LE_OQ); }
inline __m256d cmp_gt(D4 a, D4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_GT_OQ); }
inline __m256d cmp_lt(D4 a, D4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ); }

struct Chunk {
  std::size_t e;
  std::size_t m;
  __m256i mask;
};

inline Chunk chunk(std::size_t e, std::size_t n) {
  const std::size_t m = std::min<std::size_t>(4, n - e);
  const auto on = [m](std::size_t lane) { return lane < m ? std::int64_t{-1} : std::int64_t{0}; };
  return {e, m, _mm256_setr_epi64x(on(0), on(1), on(2), on(3))};
}

inline D4 load(const double* p, const Chunk& c) {
  return {c.m == 4 ? _mm256_loadu_pd(p + c.e) : _mm256_maskload_pd(p + c.e, c.mask)};
}

inline void store(double* p, const Chunk& c, D4 x) {
  if (c.m == 4) {
    _mm256_storeu_pd(p + c.e, x.v);
  } else {
    _mm256_maskstore_pd(p + c.e, c.mask, x.v);
  }
}

/// Lanes outside the chunk are replaced by +inf so they drop out of a min.
inline D4 mask_for_min(D4 x, const Chunk& c) {
  return select(_mm256_castsi256_pd(c.mask), x, splat(std::numeric_limits<double>::infinity()));
}

inline double hmin(D4 x) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, x.v);
  double t = lanes[0];
  for (int i = 1; i < 4; ++i) t = std::min(t, lanes[i]);
  return t;
}

struct Quad {
  D4 c[4];
};

inline Quad load4(const Ptr4& p, const Chunk& c) {
  return {{load(p[0], c), load(p[1], c), load(p[2], c), load(p[3], c)}};
}

/// Upwinded 1D HLL flux with unclipped speeds (sl, sr).
inline Quad hll(const Quad& fl, const Quad& fr, const Quad& ul, const Quad& ur, D4 sl, D4 sr) {
  const D4 zero = splat(0.0);
  const D4 slsr = sl * sr;
  const D4 inv = splat(1.0) / (sr - sl);
  const __m256d take_left = cmp_ge(sl, zero);
  const __m256d take_right = cmp_le(sr, zero);
  Quad out;
  for (int k = 0; k < 4; ++k) {
    D4 f = (sr * fl.c[k] - sl * fr.c[k] + slsr * (ur.c[k] - ul.c[k])) * inv;
    f = select(take_right, fr.c[k], f);
    out.c[k] = select(take_left, fl.c[k], f);
  }
  return out;
}

inline D4 fan_blend(D4 a, D4 b, D4 half_ratio) { return splat(0.5) * (a + b) + half_ratio * (a - b); }

void cell_terms(std::size_t n, double gamma, const CellView& cells, const CellTermsOut& out) {
  const D4 g = splat(gamma);
  const D4 gm1 = splat(gamma - 1.0);
  const D4 one = splat(1.0);
  for (std::size_t e = 0; e < n; e += 4) {
    const Chunk c = chunk(e, n);
    const D4 rho = load(cells.rho, c);
    const D4 vx = load(cells.vel_x, c);
    const D4 vy = load(cells.vel_y, c);
    const D4 p = load(cells.pressure, c);
    const Quad u = load4(cells.cons, c);

    const D4 eint = p / (gm1 * rho);
    const D4 h = one + eint + p / rho;
    const D4 c2 = g * p / (rho * h);
    const D4 cs = vsqrt(c2);
    const D4 q = vx * vx + vy * vy;
    const D4 inv_w = vsqrt(one - q);
    const D4 den = one - c2 * q;
    const D4 soft = one - c2;

    const auto speeds = [&](D4 un, double* lam1, double* lam4) {
      const D4 un2 = un * un;
      const D4 root = vsqrt(one - un2 - c2 * (q - un2));
      const D4 a = un * soft;
      const D4 b = cs * inv_w * root;
      store(lam1, c, (a - b) / den);
      store(lam4, c, (a + b) / den);
    };
    speeds(vx, out.lam1_x, out.lam4_x);
    speeds(vy, out.lam1_y, out.lam4_y);

    store(out.flux_x[0], c, u.c[0] * vx);
    store(out.flux_x[1], c, u.c[1] * vx + p);
    store(out.flux_x[2], c, u.c[2] * vx);
    store(out.flux_x[3], c, (u.c[3] + p) * vx);
    store(out.flux_y[0], c, u.c[0] * vy);
    store(out.flux_y[1], c, u.c[1] * vy);
    store(out.flux_y[2], c, u.c[2] * vy + p);
    store(out.flux_y[3], c, (u.c[3] + p) * vy);
  }
}

double min_crossing_time(std::size_t n, double dx, double dy, const CellView& cells) {
  const D4 hx = splat(dx);
  const D4 hy = splat(dy);
  D4 t = splat(std::numeric_limits<double>::infinity());
  for (std::size_t e = 0; e < n; e += 4) {
    const Chunk c = chunk(e, n);
    const D4 ax = vmax(vabs(load(cells.lam4_x, c)), vabs(load(cells.lam1_x, c)));
    const D4 ay = vmax(vabs(load(cells.lam4_y, c)), vabs(load(cells.lam1_y, c)));
    t = vmin(mask_for_min(vmin(hy / ay, hx / ax), c), t);
  }
  return hmin(t);
}

void edge_hll(std::size_t n, Axis axis, double /*gamma*/, double alpha, const CellView& left, const CellView& right,
              const MutPtr4& out) {
  const bool along_x = axis == Axis::x;
  const D4 a = splat(alpha);
  for (std::size_t e = 0; e < n; e += 4) {
    const Chunk c = chunk(e, n);
    const D4 l1l = load(along_x ? left.lam1_x : left.lam1_y, c);
    const D4 l1r = load(along_x ? right.lam1_x : right.lam1_y, c);
    const D4 l4l = load(along_x ? left.lam4_x : left.lam4_y, c);
    const D4 l4r = load(along_x ? right.lam4_x : right.lam4_y, c);
    const D4 sl = a * vmin(l1l, l1r);
    const D4 sr = a * vmax(l4l, l4r);
    const Quad f = hll(load4(along_x ? left.flux_x : left.flux_y, c), load4(along_x ? right.flux_x : right.flux_y, c),
                       load4(left.cons, c), load4(right.cons, c), sl, sr);
    for (int k = 0; k < 4; ++k) store(out[k], c, f.c[k]);
  }
}

void corner_hll(std::size_t n, double /*gamma*/, double alpha, const CellView& ld, const CellView& rd,
                const CellView& lu, const CellView& ru, const CornerOut& out) {
  const D4 a = splat(alpha);
  const D4 zero = splat(0.0);
  const D4 half = splat(0.5);
  const D4 two = splat(2.0);
  for (std::size_t e = 0; e < n; e += 4) {
    const Chunk c = chunk(e, n);
    const D4 sl = a * vmin(vmin(load(ld.lam1_x, c), load(rd.lam1_x, c)), vmin(load(lu.lam1_x, c), load(ru.lam1_x, c)));
    const D4 sr = a * vmax(vmax(load(ld.lam4_x, c), load(rd.lam4_x, c)), vmax(load(lu.lam4_x, c), load(ru.lam4_x, c)));
    const D4 sd = a * vmin(vmin(load(ld.lam1_y, c), load(rd.lam1_y, c)), vmin(load(lu.lam1_y, c), load(ru.lam1_y, c)));
    const D4 su = a * vmax(vmax(load(ld.lam4_y, c), load(rd.lam4_y, c)), vmax(load(lu.lam4_y, c), load(ru.lam4_y, c)));
    const D4 slm = vmin(sl, zero);
    const D4 srp = vmax(sr, zero);
    const D4 sdm = vmin(sd, zero);
    const D4 sup = vmax(su, zero);
    // weights the vertex contributes with: zero unless it is subsonic
    const __m256d on = _mm256_and_pd(_mm256_and_pd(cmp_lt(sl, zero), cmp_gt(sr, zero)),
                                     _mm256_and_pd(cmp_lt(sd, zero), cmp_gt(su, zero)));
    store(out.s_left_minus, c, select(on, slm, zero));
    store(out.s_right_plus, c, select(on, srp, zero));
    store(out.s_down_minus, c, select(on, sdm, zero));
    store(out.s_up_plus, c, select(on, sup, zero));

    const Quad u_ld = load4(ld.cons, c);
    const Quad u_rd = load4(rd.cons, c);
    const Quad u_lu = load4(lu.cons, c);
    const Quad u_ru = load4(ru.cons, c);
    const Quad fx_ld = load4(ld.flux_x, c);
    const Quad fx_rd = load4(rd.flux_x, c);
    const Quad fx_lu = load4(lu.flux_x, c);
    const Quad fx_ru = load4(ru.flux_x, c);
    const Quad fy_ld = load4(ld.flux_y, c);
    const Quad fy_rd = load4(rd.flux_y, c);
    const Quad fy_lu = load4(lu.flux_y, c);
    const Quad fy_ru = load4(ru.flux_y, c);

    const Quad f_up = hll(fx_lu, fx_ru, u_lu, u_ru, sl, sr);
    const Quad f_down = hll(fx_ld, fx_rd, u_ld, u_rd, sl, sr);
    const Quad g_right = hll(fy_rd, fy_ru, u_rd, u_ru, sd, su);
    const Quad g_left = hll(fy_ld, fy_lu, u_ld, u_lu, sd, su);

    const D4 width_x = srp - slm;
    const D4 width_y = sup - sdm;
    const __m256d open_y = cmp_gt(width_y, zero);  // flux_x not degenerate
    const __m256d open_x = cmp_gt(width_x, zero);  // flux_y not degenerate
    const D4 ratio_x = select(open_y, half * (sup + sdm) / width_y, zero);
    const D4 ratio_y = select(open_x, half * (srp + slm) / width_x, zero);
    const D4 coef_x = select(open_x, two * slm * srp / width_x, zero);
    const D4 coef_y = select(open_y, two * sdm * sup / width_y, zero);

    for (int k = 0; k < 4; ++k) {
      const D4 g_cross = (fy_ru.c[k] - fy_rd.c[k]) - (fy_lu.c[k] - fy_ld.c[k]);
      const D4 f_cross = (fx_ru.c[k] - fx_lu.c[k]) - (fx_rd.c[k] - fx_ld.c[k]);
      D4 fx = fan_blend(f_up.c[k], f_down.c[k], ratio_x);
      fx = select(open_y, fx - coef_x * g_cross / width_y, fx);
      D4 fy = fan_blend(g_right.c[k], g_left.c[k], ratio_y);
      fy = select(open_x, fy - coef_y * f_cross / width_x, fy);
      store(out.flux_x[k], c, fx);
      store(out.flux_y[k], c, fy);
    }
  }
}

double composite(std::size_t n, double w, const Ptr4& f1d, const double* s_pos_lo, const double* s_neg_hi,
                 const Ptr4& f2d_lo, const Ptr4& f2d_hi, const MutPtr4& out) {
  const D4 wv = splat(w);
  const D4 one = splat(1.0);
  D4 min_weight = splat(std::numeric_limits<double>::infinity());
  for (std::size_t e = 0; e < n; e += 4) {
    const Chunk c = chunk(e, n);
    const D4 sp = load(s_pos_lo, c);
    const D4 sn = load(s_neg_hi, c);
    min_weight = vmin(mask_for_min(one - wv * (sp - sn), c), min_weight);
    for (int k = 0; k < 4; ++k) {
      const D4 f = load(f1d[k], c);
      store(out[k], c, f + wv * (sp * (load(f2d_lo[k], c) - f) - sn * (load(f2d_hi[k], c) - f)));
    }
  }
  return hmin(min_weight);
}

void update(std::size_t n, double cx, double cy, const MutPtr4& u, const Ptr4& f_lo, const Ptr4& f_hi,
            const Ptr4& g_lo, const Ptr4& g_hi) {
  const D4 ax = splat(cx);
  const D4 ay = splat(cy);
  for (int k = 0; k < 4; ++k) {
    for (std::size_t e = 0; e < n; e += 4) {
      const Chunk c = chunk(e, n);
      const D4 v = load(u[k], c) - ax * (load(f_hi[k], c) - load(f_lo[k], c)) -
                   ay * (load(g_hi[k], c) - load(g_lo[k], c));
      store(u[k], c, v);
    }
  }
}

}  // namespace

const KernelTable& avx2_table_ref() noexcept {
  static const KernelTable table{Isa::avx2, &cell_terms, &min_crossing_time, &edge_hll,
                                 &corner_hll, &composite, &update};
  return table;
}

}  // namespace rhd::kernels
