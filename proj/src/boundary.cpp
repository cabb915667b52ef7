#include "rhd/boundary.hpp"

#include <sstream>

#include "rhd/errors.hpp"

namespace rhd {

namespace {

bool is_periodic(const SideCondition& s) { return s.kind == BoundaryKind::periodic; }

// Copies (or mirrors) cell `src` into ghost `dst`; `normal` is the momentum
// component flipped by a reflecting wall.
void copy_cell(Field& f, std::size_t dst, std::size_t src, bool mirror, std::size_t normal) {
  for (std::size_t k = 0; k < 4; ++k) {
    double v = f.component(k)[src];
    if (mirror && k == normal) v = -v;
    f.component(k)[dst] = v;
  }
}

void set_state(Field& f, std::size_t dst, const ConservedState& u) {
  for (std::size_t k = 0; k < 4; ++k) f.component(k)[dst] = u[k];
}

bool in_interval(double c, const SideCondition& s, double h) {
  const double tol = 1e-12 * h;
  return c >= s.inflow_lo - tol && c <= s.inflow_hi + tol;
}

}  // namespace

BoundarySpec BoundarySpec::uniform(BoundaryKind kind) {
  BoundarySpec b;
  for (auto& s : b.sides) s.kind = kind;
  return b;
}

void BoundarySpec::validate() const {
  if (is_periodic((*this)[Side::x_min]) != is_periodic((*this)[Side::x_max]) ||
      is_periodic((*this)[Side::y_min]) != is_periodic((*this)[Side::y_max])) {
    throw ConfigError("periodic boundaries must be specified on both opposing sides");
  }
  for (const auto& s : sides) {
    if (s.kind != BoundaryKind::inflow) continue;
    if (!is_valid(s.inflow_state)) throw ConfigError("inflow state is not physical");
    if (!(s.inflow_hi >= s.inflow_lo)) throw ConfigError("inflow interval is empty");
  }
}

std::string_view to_string(BoundaryKind kind) noexcept {
  switch (kind) {
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::outflow: return "outflow";
    case BoundaryKind::reflect: return "reflect";
    case BoundaryKind::inflow: return "inflow";
  }
  return "unknown";
}

void fill_ghosts(Field& field, const BoundarySpec& bcs, const EosParams& eos) {
  bcs.validate();
  const Grid& g = field.grid();
  const int nx = g.nx();
  const int ny = g.ny();

  // x sides, interior rows
  for (int side = 0; side < 2; ++side) {
    const SideCondition& sc = bcs.sides[side];
    const int ghost = side == 0 ? -1 : nx;
    const int inner = side == 0 ? 0 : nx - 1;
    const int wrap = side == 0 ? nx - 1 : 0;
    const ConservedState beam = sc.kind == BoundaryKind::inflow ? prim_to_cons(sc.inflow_state, eos) : ConservedState{};
    for (int j = 0; j < ny; ++j) {
      const auto dst = field.index(ghost, j);
      switch (sc.kind) {
        case BoundaryKind::periodic: copy_cell(field, dst, field.index(wrap, j), false, 1); break;
        case BoundaryKind::outflow: copy_cell(field, dst, field.index(inner, j), false, 1); break;
        case BoundaryKind::reflect: copy_cell(field, dst, field.index(inner, j), true, 1); break;
        case BoundaryKind::inflow:
          if (in_interval(g.y_center(j), sc, g.dy())) {
            set_state(field, dst, beam);
          } else {
            copy_cell(field, dst, field.index(inner, j), false, 1);
          }
          break;
      }
    }
  }

  // y sides, full padded rows including the x ghosts
  for (int side = 2; side < 4; ++side) {
    const SideCondition& sc = bcs.sides[side];
    const int ghost = side == 2 ? -1 : ny;
    const int inner = side == 2 ? 0 : ny - 1;
    const int wrap = side == 2 ? ny - 1 : 0;
    const ConservedState beam = sc.kind == BoundaryKind::inflow ? prim_to_cons(sc.inflow_state, eos) : ConservedState{};
    for (int i = -1; i <= nx; ++i) {
      const auto dst = field.index(i, ghost);
      switch (sc.kind) {
        case BoundaryKind::periodic: copy_cell(field, dst, field.index(i, wrap), false, 2); break;
        case BoundaryKind::outflow: copy_cell(field, dst, field.index(i, inner), false, 2); break;
        case BoundaryKind::reflect: copy_cell(field, dst, field.index(i, inner), true, 2); break;
        case BoundaryKind::inflow:
          if (in_interval(g.x_center(i), sc, g.dx())) {
            set_state(field, dst, beam);
          } else {
            copy_cell(field, dst, field.index(i, inner), false, 2);
          }
          break;
      }
    }
  }
}

}  // namespace rhd
