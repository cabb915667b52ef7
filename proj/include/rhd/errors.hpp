#pragma once

#include <stdexcept>
#include <string>

namespace rhd {

/// Base class for every failure raised by the solver library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a physical relation (e.g. |u| >= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A conserved state is outside the admissible set.
class AdmissibilityError : public Error {
 public:
  AdmissibilityError(const std::string& what, double mass, double margin)
      : Error(what), mass_(mass), margin_(margin) {}
  double mass() const noexcept { return mass_; }
  double margin() const noexcept { return margin_; }

 private:
  double mass_;
  double margin_;
};

/// Pressure root-finding did not reach tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}
  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// HLL fan of zero width (S_R == S_L) where a finite fan is required.
class DegenerateFanError : public Error {
 public:
  using Error::Error;
};

/// The multidimensional intermediate state was requested outside the
/// subsonic corner configuration S_L < 0 < S_R, S_D < 0 < S_U.
class DispatchError : public Error {
 public:
  using Error::Error;
};

/// Invalid run or solver configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The composite flux gave the 1D edge flux a negative weight.
class CflViolationError : public Error {
 public:
  using Error::Error;
};

/// An updated cell left the admissible set.
class PcpAuditError : public Error {
 public:
  PcpAuditError(const std::string& what, int i, int j)
      : Error(what), i_(i), j_(j) {}
  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }

 private:
  int i_;
  int j_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rhd
