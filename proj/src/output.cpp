#include "rhd/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "rhd/errors.hpp"
#include "rhd/problems.hpp"
#include "rhd/solver.hpp"

namespace rhd {

namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream f(path, std::ios::out | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

void finish(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

void write_ray(std::ostream& os, const char* label, const Ray& ray) {
  os << "# " << label << '\n';
  for (std::size_t k = 0; k < ray.coord.size(); ++k) {
    os << format_real(ray.coord[k]) << ' ' << format_real(ray.value[k]) << '\n';
  }
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field(std::ostream& os, const Field& field, const EosParams& eos, const PrimitiveLookup& prim) {
  const Grid& g = field.grid();
  os << "# " << g.nx() << ' ' << g.ny() << ' ' << format_real(g.x_min()) << ' ' << format_real(g.x_max()) << ' '
     << format_real(g.y_min()) << ' ' << format_real(g.y_max()) << ' ' << format_real(field.time) << ' '
     << format_real(eos.gamma()) << '\n';
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const PrimitiveState v = prim(i, j);
      const ConservedState u = field.cell(i, j);
      os << format_real(g.x_center(i)) << ' ' << format_real(g.y_center(j)) << ' ' << format_real(v.rho) << ' '
         << format_real(v.vel_x) << ' ' << format_real(v.vel_y) << ' ' << format_real(v.pressure);
      for (std::size_t k = 0; k < 4; ++k) os << ' ' << format_real(u[k]);
      os << '\n';
    }
  }
}

void write_field(const std::string& path, const Field& field, const EosParams& eos, const PrimitiveLookup& prim) {
  auto f = open_for_write(path);
  write_field(f, field, eos, prim);
  finish(f, path);
}

void write_field(const std::string& path, const Solver& solver) {
  write_field(path, solver.field(), solver.eos(), [&solver](int i, int j) { return solver.prim(i, j); });
}

void write_cuts(std::ostream& os, const Grid& grid, std::span<const double> values) {
  write_ray(os, "ray x = centre, coord = y - y_centre", axis_ray(grid, values));
  os << '\n';
  if (grid.nx() == grid.ny()) {
    write_ray(os, "ray y = x, coord = signed distance from centre", diagonal_ray(grid, values));
  } else {
    os << "# ray y = x skipped: grid is not square\n";
  }
}

void write_cuts(const std::string& path, const Grid& grid, std::span<const double> values) {
  auto f = open_for_write(path);
  write_cuts(f, grid, values);
  finish(f, path);
}

void write_schlieren(std::ostream& os, const Grid& g, const PrimitiveLookup& prim) {
  const int nx = g.nx();
  const int ny = g.ny();
  std::vector<double> rho(static_cast<std::size_t>(nx) * ny);
  std::vector<double> p(rho.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const PrimitiveState v = prim(i, j);
      rho[static_cast<std::size_t>(j) * nx + i] = v.rho;
      p[static_cast<std::size_t>(j) * nx + i] = v.pressure;
    }
  }
  const auto at = [&](int i, int j) { return rho[static_cast<std::size_t>(j) * nx + i]; };
  // centred inside, one-sided on the edges, zero along a single-cell direction
  const auto diff = [](int k, int n, double h, const auto& f) {
    if (n < 2) return 0.0;
    if (k == 0) return (f(1) - f(0)) / h;
    if (k == n - 1) return (f(n - 1) - f(n - 2)) / h;
    return (f(k + 1) - f(k - 1)) / (2.0 * h);
  };
  os << "# x y ln_rho ln_p grad_rho_mag\n";
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double gx = diff(i, nx, g.dx(), [&](int a) { return at(a, j); });
      const double gy = diff(j, ny, g.dy(), [&](int b) { return at(i, b); });
      const std::size_t e = static_cast<std::size_t>(j) * nx + i;
      os << format_real(g.x_center(i)) << ' ' << format_real(g.y_center(j)) << ' ' << format_real(std::log(rho[e]))
         << ' ' << format_real(std::log(p[e])) << ' ' << format_real(std::hypot(gx, gy)) << '\n';
    }
  }
}

void write_schlieren(const std::string& path, const Grid& grid, const PrimitiveLookup& prim) {
  auto f = open_for_write(path);
  write_schlieren(f, grid, prim);
  finish(f, path);
}

void Report::add(const std::string& key, double value) { entries_.emplace_back(key, format_real(value)); }
void Report::add(const std::string& key, std::int64_t value) { entries_.emplace_back(key, std::to_string(value)); }
void Report::add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }

std::string Report::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return {};
}

void Report::write(std::ostream& os) const {
  for (const auto& [k, v] : entries_) os << k << " = " << v << '\n';
}

void Report::write(const std::string& path) const {
  auto f = open_for_write(path);
  write(f);
  finish(f, path);
}

void ensure_directory(const std::string& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir + "'" + (ec ? ": " + ec.message() : std::string()));
  }
}

}  // namespace rhd
