#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "rhd/physics.hpp"

namespace rhd {

/// Uniform Cartesian mesh of nx x ny cells over [x_min, x_max] x [y_min, y_max].
class Grid {
 public:
  /// Throws ConfigError for non-positive counts or empty extents.
  Grid(int nx, int ny, double x_min, double x_max, double y_min, double y_max);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  double y_min() const noexcept { return y_min_; }
  double y_max() const noexcept { return y_max_; }
  double dx() const noexcept { return dx_; }
  double dy() const noexcept { return dy_; }
  double area() const noexcept { return (x_max_ - x_min_) * (y_max_ - y_min_); }

  /// Cell-centre coordinates; valid for ghost indices too.
  double x_center(int i) const noexcept { return x_min_ + (i + 0.5) * dx_; }
  double y_center(int j) const noexcept { return y_min_ + (j + 0.5) * dy_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int nx_;
  int ny_;
  double x_min_;
  double x_max_;
  double y_min_;
  double y_max_;
  double dx_;
  double dy_;
};

/// Width of the ghost layer; the first-order stencil touches the 3x3 neighbourhood.
inline constexpr int kGhost = 1;

/// Cell-averaged conserved variables in structure-of-arrays layout, padded
/// by one ghost layer. Cell (i, j) with i in [-1, nx], j in [-1, ny] lives at
/// index (j + 1) * stride() + (i + 1).
class Field {
 public:
  explicit Field(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  int stride() const noexcept { return grid_.nx() + 2 * kGhost; }
  std::size_t size() const noexcept { return cons_[0].size(); }

  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j + kGhost) * static_cast<std::size_t>(stride()) +
           static_cast<std::size_t>(i + kGhost);
  }

  ConservedState cell(int i, int j) const noexcept;
  void set_cell(int i, int j, const ConservedState& u) noexcept;

  std::span<double> component(std::size_t k) noexcept { return cons_[k]; }
  std::span<const double> component(std::size_t k) const noexcept { return cons_[k]; }

  double time = 0.0;

  /// Sum of interior cell averages times the cell area.
  ConservedState total() const noexcept;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Grid grid_;
  std::array<std::vector<double>, 4> cons_;
};

}  // namespace rhd
