#pragma once

#include "foxwright/hfunction.hpp"

namespace foxwright {

// S_mu^{(alpha,beta)}(r; {k^nu}) = sum_{k>=1} 2 k^{nu beta} / (r^2 + k^{nu alpha})^mu.
struct MathieuSpec {
  double alpha;
  double beta;
  double mu;
  double nu;
  double r;
};

// Closed-form two-sided bounds.
//   exponent s = nu (mu alpha - beta), weight w = mu / s.
struct MathieuBounds {
  double lower;
  double upper;
  double exponent;
  double weight;
};

double mathieu_exponent(const MathieuSpec& spec);

// Direct summation with a rigorous two-sided integral bracket of the tail:
// terms are added until the bracket half-width (int_K^{K+1} of the term
// envelope) / 2 drops below tol, then the bracket midpoint is added.
double mathieu_sum(const MathieuSpec& spec, double tol = 1e-10);

// L = 2 zeta(s, w r^2 + 1), R = 2 (1 - w) zeta(s) + 2 w zeta(s, r^2 + 1).
// Requires nu * alpha == 1 and s > 1. The formulas are transcribed as
// printed; containment is not enforced here (and fails for w > 1, which
// nu * alpha == 1 forces -- see the tests).
MathieuBounds mathieu_bounds(const MathieuSpec& spec);

// Digamma variant, requires s > 2:
//   L1 = 2 exp(-(s-1) psi(w r^2 + 3/2)) / (s-1)
//   R1 = 2 (1-w) e^{(s-1) gamma} / (s-1) + 2 w exp(-(s-1) psi(r^2+1)) / (s-1)
MathieuBounds mathieu_bounds_digamma(const MathieuSpec& spec);

// mathieu_sum against
// (2/Gamma(mu)) int_0^inf x^{s-1}/(e^x - 1) * 1Psi1[(mu,1);(s,1)](-r^2 x) dx.
// Requires nu * alpha == 1 and s > 1.
ResidualReport verify_mathieu_integral_rep(const MathieuSpec& spec,
                                           double quad_tol = 1e-8);

}  // namespace foxwright
