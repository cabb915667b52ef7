#pragma once

// Plain-text data files. Every real is printed with 17 significant digits so
// the files round-trip binary64 exactly and identical runs give identical bytes.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rhd/field.hpp"
#include "rhd/physics.hpp"

namespace rhd {

class Solver;

/// Primitive state of interior cell (i, j).
using PrimitiveLookup = std::function<PrimitiveState(int i, int j)>;

/// "%.17g"
std::string format_real(double v);

/// Header `# nx ny xmin xmax ymin ymax t gamma`, then one line per interior
/// cell (j outer, i inner): x y rho u v p D mx my E.
void write_field(std::ostream& os, const Field& field, const EosParams& eos, const PrimitiveLookup& prim);
void write_field(const std::string& path, const Field& field, const EosParams& eos, const PrimitiveLookup& prim);
/// Uses the primitives the solver recovered for the current state.
void write_field(const std::string& path, const Solver& solver);

/// Two blocks of `coord value` pairs separated by a blank line, each opened
/// by a comment naming the ray: x = centre (coordinate y - centre), then the
/// diagonal y = x (signed distance from the centre).
void write_cuts(std::ostream& os, const Grid& grid, std::span<const double> values);
void write_cuts(const std::string& path, const Grid& grid, std::span<const double> values);

/// `x y ln_rho ln_p grad_rho_mag`; |grad rho| from centred differences,
/// one-sided on the first and last row/column.
void write_schlieren(std::ostream& os, const Grid& grid, const PrimitiveLookup& prim);
void write_schlieren(const std::string& path, const Grid& grid, const PrimitiveLookup& prim);

/// Ordered `key = value` lines.
class Report {
 public:
  void add(const std::string& key, double value);
  void add(const std::string& key, std::int64_t value);
  void add(const std::string& key, int value) { add(key, static_cast<std::int64_t>(value)); }
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
  /// Value for `key`; empty when absent.
  std::string get(const std::string& key) const;

  void write(std::ostream& os) const;
  void write(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Creates the directory (and parents) if needed; IoError on failure.
void ensure_directory(const std::string& dir);

}  // namespace rhd
