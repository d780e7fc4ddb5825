#pragma once

#include <stdexcept>
#include <string>

namespace cpmcmc {

// Base for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid configuration, malformed input files, violated call preconditions.
struct config_error : error {
  using error::error;
};

// Numerical degeneracy at run time: all-zero weight vectors, failed
// factorizations, non-finite intermediate values.
struct numerical_error : error {
  using error::error;
};

}  // namespace cpmcmc
