#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "foxwright/params.hpp"

namespace foxwright {

namespace detail {
// ln Gamma(w) on the right half-plane Re(w) > 0, accuracy ~1e-13 for
// |Im w| <= ~1e4. Kept here with the contour machinery; the real kernels in
// special.hpp stay real-only.
std::complex<double> log_gamma_complex(std::complex<double> w);
}  // namespace detail

// Vertical-line Mellin-inversion contour Re(s) = offset, Im(s) in
// [-half_length, half_length], trapezoid step `step`.
struct ContourSpec {
  double offset;
  double half_length;
  double step;

  // offset = max(gamma_pole + 1, 1), half_length = 200, step = 0.05.
  static ContourSpec defaults(const FoxWrightParams& params);
};

struct HDensitySpec {
  FoxWrightParams params;
  ContourSpec contour;
};

// prod Gamma(A_i s + alpha_i) / prod Gamma(B_j s + beta_j).
std::complex<double> mellin_integrand(const FoxWrightParams& params,
                                      std::complex<double> s);

struct DensityValue {
  double value;
  double tail_estimate;  // estimated contour-truncation remainder (absolute)
};

struct WeightedIntegral {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
  double worst_tail = 0.0;  // largest per-point truncation estimate seen
};

// Numerical inversion of the Mellin pair on the vertical line. The contour
// samples are cached at construction, so repeated evaluation costs one
// complex rotation pass per point. An asymptotic integration-by-parts
// correction accounts for the truncated |Im s| > half_length tail; the first
// neglected term drives the per-point tail_estimate.
class HDensity {
 public:
  explicit HDensity(HDensitySpec spec);

  // Density value at t; exactly 0 for t >= rho (compact support).
  DensityValue evaluate(double t) const;
  double operator()(double t) const { return evaluate(t).value; }

  // integral over (0, rho) of g(t) * density(t) dt / t.
  // The last O(1/half_length) sliver below rho is handled by a two-point
  // endpoint model with the known edge exponent mu - 1.
  WeightedIntegral integrate_weighted(const std::function<double(double)>& g,
                                      double tol = 1e-9) const;

  double rho() const { return cd_.rho; }
  double mu() const { return cd_.mu; }
  const HDensitySpec& spec() const { return spec_; }
  const ConvergenceData& convergence() const { return cd_; }

 private:
  struct TailTerms {
    std::complex<double> a, ap, app, appp;  // a(T) and end derivatives
  };

  HDensitySpec spec_;
  ConvergenceData cd_;
  double log_rho_;
  double abs_sample_sum_ = 0.0;
  std::vector<std::complex<double>> samples_;
  TailTerms tail_;

  std::complex<double> contour_sum(double log_t) const;
};

// One-off evaluation (builds the cached evaluator; prefer HDensity for loops).
double h_density(const HDensitySpec& spec, double t);

// Outcome of comparing a series value against an independent quadrature.
struct ResidualReport {
  double series = 0.0;
  double integral = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  std::vector<std::string> warnings;
};
std::string to_json_text(const ResidualReport& report);

// series(params, z)  vs  int_0^rho e^{zt} H(t) dt/t.
ResidualReport verify_laplace_rep(const HDensitySpec& spec, double z);

// series with prepended (sigma, 1) at -z  vs  int_0^rho (1+tz)^{-sigma} H dt/t,
// 0 < z < 1, sigma > 0.
ResidualReport verify_stieltjes_rep(const HDensitySpec& spec, double sigma,
                                    double z);

// series(params, 1/z)  vs  psi_{0,0} + int_0^inf e^{-zt} W(t) dt, where W is
// the shifted series with an extra lower pair (2, 1).
ResidualReport verify_reciprocal_laplace(const FoxWrightParams& params,
                                         double z, double quad_tol = 1e-9);

// z^{-lambda} * series with prepended (lambda, 1) at -omega/z  vs
// int_0^inf e^{-zt} t^{lambda-1} series(-omega t) dt.
ResidualReport verify_lambda_transform(const FoxWrightParams& params,
                                       double lambda, double omega, double z,
                                       double quad_tol = 1e-9);

// int_0^inf e^{-zt} t^{lambda-1} series(params, -omega t) dt by quadrature.
// Shared by verify_lambda_transform and the lambda-envelope value route.
double lambda_laplace_integral(const FoxWrightParams& params, double lambda,
                               double omega, double z, double quad_tol = 1e-9);

// Equal-weight reduction: density(params with weight A) at t against
// (1/A) * density(unit-weight params) at t^{1/A}.
ResidualReport meijer_g_reduction_check(const HDensitySpec& spec, double t);

}  // namespace foxwright
