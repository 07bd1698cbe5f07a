#pragma once

#include <stdexcept>
#include <string>

namespace ccm {

// Malformed or out-of-contract arguments (dimension mismatch, t outside the
// domain, negative dilation factor, ...). The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to reach its tolerance. Carries the best value
// found so callers may still report it.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_bound, double residual)
      : std::runtime_error(what), best_bound_(best_bound), residual_(residual) {}

  double best_bound() const noexcept { return best_bound_; }
  double residual() const noexcept { return residual_; }

 private:
  double best_bound_;
  double residual_;
};

}  // namespace ccm
