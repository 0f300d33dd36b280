#pragma once

#include <stdexcept>
#include <string>

namespace patchdyn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Iteration caps, step underflow, blow-up.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class StiffnessError : public NumericalFailure {
 public:
  StiffnessError(const std::string& what, double t) : NumericalFailure(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

class DivergenceError : public NumericalFailure {
 public:
  DivergenceError(const std::string& what, double t) : NumericalFailure(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  PoleError(const std::string& what, double location) : Error(what), location_(location) {}
  double location() const { return location_; }

 private:
  double location_;
};

class BoundUndefined : public Error {
 public:
  using Error::Error;
};

}  // namespace patchdyn
