#pragma once

#include <stdexcept>

namespace foxwright {

// Error taxonomy mirrored by the CLI exit codes:
//   InputError      -> exit 2 (bad arguments, domain violations, parse failures)
//   HypothesisError -> exit 1 (a theorem's hypothesis set is not satisfied)
//   NumericError    -> exit 3 (divergence, non-convergence, quadrature breakdown)
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergenceError : NumericError {
  using NumericError::NumericError;
};

struct NoConvergenceError : NumericError {
  using NumericError::NumericError;
};

}  // namespace foxwright
