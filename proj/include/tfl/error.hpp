#pragma once

#include <stdexcept>
#include <string>

namespace tfl {

enum class ErrorKind {
  InvalidInput,
  StrictTriangularityViolated,
  VertexSingularity,
  NoInteriorMinimum,
  NonConvergence,
  OpeningTooWide,
  DiskTooSmall,
  QuadratureFailure,
  NotStationary,
  TangentialCrossing,
  InfeasibleVolumes,
  FrozenRingTooThin,
  BallOutsideDomain,
  NoJunctionInWindow,
  MultipleJunctions,
};

const char* to_string(ErrorKind kind);

// Numerical failures map to CLI exit code 3; everything else is a validation
// problem (exit code 2).
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by fermat_solve when the weighted Fermat point sits on a vertex.
class NoInteriorMinimumError : public Error {
 public:
  NoInteriorMinimumError(int vertex, const std::string& what)
      : Error(ErrorKind::NoInteriorMinimum, what), vertex_(vertex) {}

  int vertex() const noexcept { return vertex_; }

 private:
  int vertex_;
};

}  // namespace tfl
