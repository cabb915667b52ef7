#include "rhd/field.hpp"

#include <sstream>

#include "rhd/errors.hpp"

namespace rhd {

Grid::Grid(int nx, int ny, double x_min, double x_max, double y_min, double y_max)
    : nx_(nx), ny_(ny), x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max) {
  if (nx < 1 || ny < 1) {
    std::ostringstream msg;
    msg << "grid needs at least one cell per direction, got " << nx << " x " << ny;
    throw ConfigError(msg.str());
  }
  if (!(x_max > x_min) || !(y_max > y_min)) throw ConfigError("grid extents must be non-empty");
  dx_ = (x_max - x_min) / nx;
  dy_ = (y_max - y_min) / ny;
}

Field::Field(const Grid& grid) : grid_(grid) {
  const auto n = static_cast<std::size_t>(grid.nx() + 2 * kGhost) * static_cast<std::size_t>(grid.ny() + 2 * kGhost);
  for (auto& c : cons_) c.assign(n, 0.0);
}

ConservedState Field::cell(int i, int j) const noexcept {
  const auto c = index(i, j);
  return {cons_[0][c], cons_[1][c], cons_[2][c], cons_[3][c]};
}

void Field::set_cell(int i, int j, const ConservedState& u) noexcept {
  const auto c = index(i, j);
  for (std::size_t k = 0; k < 4; ++k) cons_[k][c] = u[k];
}

ConservedState Field::total() const noexcept {
  ConservedState sum;
  const double cell_area = grid_.dx() * grid_.dy();
  for (std::size_t k = 0; k < 4; ++k) {
    double acc = 0.0;
    for (int j = 0; j < grid_.ny(); ++j) {
      for (int i = 0; i < grid_.nx(); ++i) acc += cons_[k][index(i, j)];
    }
    sum[k] = acc * cell_area;
  }
  return sum;
}

}  // namespace rhd
