#pragma once

#include <stdexcept>
#include <string>

namespace nek {

// Quadrature did not converge within its order budget. Carries the best
// estimate seen so far plus the last observed inter-order difference.
class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, double partial, double error_estimate)
      : std::runtime_error(what), partial_(partial), error_estimate_(error_estimate) {}
  double partial() const { return partial_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double partial_;
  double error_estimate_;
};

// A provider (Green data, tabulated potential, ...) was asked for data it
// does not carry.
class NotConfigured : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every Monte Carlo path exhausted its time budget without absorption.
class NoAbsorption : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A single SDE step moved further than the reflection model can handle.
class StepTooLarge : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field evaluation requested inside / too close to the absorbing window,
// where the expansion is not valid.
class OutOfValidity : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration file rejected; message is path-qualified ("mc.dt: ...").
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nek
