#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace whittaker {

enum class ErrorKind {
  DivisionByZero,
  SingularLeadingMinor,
  UnsupportedRank,
  DegenerateDenominator,
  ZeroBaseNegativeExponent,
  NotInChartDomain,
  ReconstructionMismatch,
  OutsideBigCell,
  StructureViolation,
  DomainViolation,
  PoleHit,
  Infeasible,
  DimensionTooLarge,
  NotConverged,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown by Gauss decomposition; index is the 1-based order of the vanishing minor.
class SingularLeadingMinor : public Error {
 public:
  explicit SingularLeadingMinor(int k)
      : Error(ErrorKind::SingularLeadingMinor, "leading minor " + std::to_string(k) + " vanishes"),
        index(k) {}
  int index;
};

class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, std::complex<double> partial, double est_error)
      : Error(ErrorKind::NotConverged, what), partial(partial), est_error(est_error) {}
  std::complex<double> partial;
  double est_error;
};

}  // namespace whittaker
