#pragma once

// Data-parallel sweeps of the finite-volume update over structure-of-arrays
// storage. Every kernel has a scalar reference implementation, written on top
// of the physics/riemann API, and an AVX2 variant that performs the same
// floating-point operations in the same order; the two agree bit for bit.
// The active variant is chosen once at runtime from the CPU features and can
// be overridden with RHD_KERNELS=scalar|avx2 or select().

#include <array>
#include <cstddef>
#include <string_view>

#include "rhd/physics.hpp"

namespace rhd::kernels {

enum class Isa { scalar, avx2 };

using Ptr4 = std::array<const double*, 4>;
using MutPtr4 = std::array<double*, 4>;

/// Run of consecutive cells; element e of a kernel reads index e of every
/// array. shifted() moves all arrays together so stencil neighbours can be
/// passed as separate views.
struct CellView {
  const double* rho = nullptr;
  const double* vel_x = nullptr;
  const double* vel_y = nullptr;
  const double* pressure = nullptr;
  Ptr4 cons{};
  Ptr4 flux_x{};
  Ptr4 flux_y{};
  const double* lam1_x = nullptr;
  const double* lam4_x = nullptr;
  const double* lam1_y = nullptr;
  const double* lam4_y = nullptr;

  CellView shifted(std::ptrdiff_t d) const noexcept;
};

struct CellTermsOut {
  double* lam1_x = nullptr;
  double* lam4_x = nullptr;
  double* lam1_y = nullptr;
  double* lam4_y = nullptr;
  MutPtr4 flux_x{};
  MutPtr4 flux_y{};
};

struct CornerOut {
  double* s_left_minus = nullptr;
  double* s_right_plus = nullptr;
  double* s_down_minus = nullptr;
  double* s_up_plus = nullptr;
  MutPtr4 flux_x{};
  MutPtr4 flux_y{};
};

struct KernelTable {
  Isa isa;

  /// Extremal eigenvalues per axis and physical fluxes from (rho, u, v, p, U).
  void (*cell_terms)(std::size_t n, double gamma, const CellView& cells, const CellTermsOut& out);

  /// min over cells of min(dx / max|lam_x|, dy / max|lam_y|); +inf for n == 0.
  double (*min_crossing_time)(std::size_t n, double dx, double dy, const CellView& cells);

  /// 1D HLL flux between left[e] and right[e] along `axis`. The scalar
  /// variant re-derives speeds from the primitives (hence gamma); the vector
  /// variant reads the cached eigenvalue arrays.
  void (*edge_hll)(std::size_t n, Axis axis, double gamma, double alpha, const CellView& left,
                   const CellView& right, const MutPtr4& out);

  /// Vertex solver: F^{2D}, G^{2D} per vertex and the clipped speeds the
  /// vertex contributes to its edges with. A vertex that is not subsonic in
  /// both directions gets all four weights zero, so its edges keep the plain
  /// 1D flux (the clipped-speed vertex flux is not admissibility preserving).
  void (*corner_hll)(std::size_t n, double gamma, double alpha, const CellView& ld, const CellView& rd, const CellView& lu,
                     const CellView& ru, const CornerOut& out);

  /// out = f1d + w (s_pos_lo (f2d_lo - f1d) - s_neg_hi (f2d_hi - f1d)), the
  /// composite face flux; returns the minimum 1D weight
  /// 1 - w (s_pos_lo - s_neg_hi) over the run (+inf for n == 0).
  double (*composite)(std::size_t n, double w, const Ptr4& f1d, const double* s_pos_lo, const double* s_neg_hi,
                      const Ptr4& f2d_lo, const Ptr4& f2d_hi, const MutPtr4& out);

  /// u <- u - cx (f_hi - f_lo) - cy (g_hi - g_lo)
  void (*update)(std::size_t n, double cx, double cy, const MutPtr4& u, const Ptr4& f_lo, const Ptr4& f_hi,
                 const Ptr4& g_lo, const Ptr4& g_hi);
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the library was built without the AVX2 variant.
const KernelTable* avx2_table() noexcept;

bool cpu_has_avx2() noexcept;

/// Kernel set used by the solver.
const KernelTable& active() noexcept;

/// Forces a variant. Throws ConfigError if it is unavailable on this CPU/build.
void select(Isa isa);

std::string_view to_string(Isa isa) noexcept;

}  // namespace rhd::kernels
