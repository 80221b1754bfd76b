#pragma once

#include <complex>
#include <span>

#include "foxwright/params.hpp"

namespace foxwright {

// Direct evaluation of the defining series sum_k r_k z^k / k! with
// r_k = prod Gamma(alpha_i + k A_i) / prod Gamma(beta_j + k B_j).
//
// Convergence domain: delta > -1 for every z; delta == -1 requires |z| < nabla;
// otherwise a DivergenceError is thrown. Terms are generated by the log-space
// term recurrence; Kahan summation throughout, with an automatic 80-bit
// resummation when |max term| / |sum| exceeds 1e8 (heavy alternation).
double eval_series(const FoxWrightParams& params, double z, double tol = 1e-12);
std::complex<double> eval_series(const FoxWrightParams& params,
                                 std::complex<double> z, double tol = 1e-12);

// pFq via the gamma-prefactor reduction:
// prod Gamma(beta_j) / prod Gamma(alpha_i) * series with unit weights.
double eval_pfq(std::span<const double> upper_shifts,
                std::span<const double> lower_shifts, double z,
                double tol = 1e-12);

// k-th series term computed directly from log-gammas (no recurrence).
// Test oracle for the recurrence path.
double series_term(const FoxWrightParams& params, long k, double z);

// Log-space term recurrence: magnitude kept as log|term|, phase separately.
// Exposed so the recurrence/direct consistency can be probed.
class TermRecurrence {
 public:
  TermRecurrence(const FoxWrightParams& params, std::complex<double> z);

  void advance();
  long k() const { return k_; }
  double log_magnitude() const { return log_mag_; }
  std::complex<double> term() const;
  // |term_{k+1}| / |term_k| for the step just taken (1.0 before any step).
  double last_ratio() const { return last_ratio_; }

 private:
  const FoxWrightParams& params_;
  std::complex<double> unit_;
  double log_abs_z_;
  long k_ = 0;
  double log_mag_;
  std::complex<double> phase_{1.0, 0.0};
  double last_ratio_ = 1.0;
  std::vector<double> upper_lg_;
  std::vector<double> lower_lg_;
};

}  // namespace foxwright
