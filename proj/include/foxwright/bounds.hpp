#pragma once

#include <optional>
#include <span>
#include <string>

#include "foxwright/params.hpp"

namespace foxwright {

struct Envelope {
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> value;
  bool unchecked = false;  // hypothesis checks were bypassed
};

bool envelope_contained(const Envelope& e, double tol = 1e-10);
std::string to_json_text(const Envelope& e, double z);

// Two-sided exponential envelope for series(-z), z >= 0:
//   lower = psi00 exp(-psi01 z / psi00)
//   upper = psi00 - (psi01 / rho)(1 - e^{-rho z})
// Requires balanced parameters with mu > 0 and H1 (bypass with unchecked).
Envelope luke_bounds(const FoxWrightParams& params, double z,
                     bool with_value = true, bool unchecked = false);

// Rational envelope for the (lambda,1)-prepended series at -z, z > 0:
//   lower = psi00 Gamma(lambda) / (1 + psi01 z / psi00)^lambda
//   upper = Gamma(lambda) [psi00 - (psi01/rho)(1 - (1 + rho z)^{-lambda})]
// The prepended series sits on the delta == -1 boundary, so the value is
// produced by the lambda-Laplace quadrature rather than summation.
Envelope luke_bounds_lambda(const FoxWrightParams& params, double lambda,
                            double z, bool with_value = true,
                            bool unchecked = false);

// Classical two-sided pFq envelope with theta = prod alpha_j / beta_j:
//   1/(1 + theta z)^sigma <= p+1Fp(sigma, alpha; beta; -z)
//                         <= 1 - theta + theta (1+z)^{-sigma}
// Requires pairwise alpha_j <= beta_j and H2; value attached when z < 1.
Envelope pfq_luke(std::span<const double> upper_shifts,
                  std::span<const double> lower_shifts, double sigma, double z,
                  bool with_value = true, bool unchecked = false);

}  // namespace foxwright
