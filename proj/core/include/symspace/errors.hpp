#pragma once

#include <stdexcept>
#include <string>

namespace symspace {

// Base class for numerical failures raised by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input outside an operation's mathematical domain (e.g. real logm of a
// matrix with an eigenvalue on the closed negative real axis).
struct domain_error : error {
  using error::error;
};

// A computation left the representable range. Stability experiments catch
// this and record the run as diverged; it must never abort the process.
struct diverged_error : error {
  using error::error;
};

// An iteration ran out of its budget before reaching tolerance.
struct convergence_error : error {
  convergence_error(const std::string& what, double residual)
      : error(what), last_residual(residual) {}
  double last_residual;
};

struct shape_error : error {
  using error::error;
};

}  // namespace symspace
