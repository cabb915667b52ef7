#pragma once

#include <array>
#include <string_view>

#include "rhd/field.hpp"
#include "rhd/physics.hpp"

namespace rhd {

enum class BoundaryKind { periodic, outflow, reflect, inflow };
enum class Side { x_min = 0, x_max = 1, y_min = 2, y_max = 3 };

struct SideCondition {
  BoundaryKind kind = BoundaryKind::outflow;
  /// inflow only: fixed state imposed on ghost cells whose centre coordinate
  /// along the side lies in [inflow_lo, inflow_hi]; zero-gradient elsewhere.
  PrimitiveState inflow_state{};
  double inflow_lo = 0.0;
  double inflow_hi = 0.0;
};

struct BoundarySpec {
  std::array<SideCondition, 4> sides{};

  SideCondition& operator[](Side s) noexcept { return sides[static_cast<int>(s)]; }
  const SideCondition& operator[](Side s) const noexcept { return sides[static_cast<int>(s)]; }

  static BoundarySpec uniform(BoundaryKind kind);

  /// Periodic must pair with periodic on the opposite side; inflow needs a
  /// valid state and a non-empty interval. Throws ConfigError otherwise.
  void validate() const;
};

std::string_view to_string(BoundaryKind kind) noexcept;

/// Populates the ghost layer of `field`. x sides are filled first over the
/// interior rows, then y sides over full padded rows, so the four ghost
/// corners follow the y-side rule applied to the x ghosts.
void fill_ghosts(Field& field, const BoundarySpec& bcs, const EosParams& eos);

}  // namespace rhd
