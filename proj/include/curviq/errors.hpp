#pragma once

#include <stdexcept>
#include <string>

namespace curviq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero during evaluation") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

struct UnboundVariable : Error {
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable: " + name) {}
};

struct DomainExhausted : Error {
  DomainExhausted()
      : Error("rejection sampling could not find enough valid points") {}
};

struct TruncationMismatch : Error {
  TruncationMismatch() : Error("hbar truncation orders do not match") {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct SingularJacobian : Error {
  SingularJacobian() : Error("Jacobian determinant vanishes on the domain") {}
};

struct SingularMetric : Error {
  SingularMetric() : Error("metric is singular on the domain") {}
};

struct RankMismatch : Error {
  explicit RankMismatch(const std::string& what) : Error(what) {}
};

struct NonCommutingFields : Error {
  NonCommutingFields() : Error("supplied vector fields do not commute") {}
};

struct WrongPoissonTensor : Error {
  WrongPoissonTensor()
      : Error("vector fields do not reproduce the canonical Poisson tensor") {}
};

struct RealityViolation : Error {
  RealityViolation()
      : Error("P polynomial violates the reality condition") {}
};

struct NotUnital : Error {
  NotUnital() : Error("morphism has no identity leading term") {}
};

struct NonPolynomialMomenta : Error {
  NonPolynomialMomenta() : Error("observable is not polynomial in momenta") {}
};

}  // namespace curviq
