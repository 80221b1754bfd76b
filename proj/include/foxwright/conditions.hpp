#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "foxwright/params.hpp"

namespace foxwright {

struct Predicate {
  std::string name;
  double margin;
  bool ok;
};

struct ConditionReport {
  bool satisfied = true;
  std::optional<std::string> first_failure;
  std::vector<Predicate> details;
};
std::string to_json_text(const ConditionReport& report);

// (H1^n) for n = 0..n_max: psi_{n,2} < psi_{n,1} and
// psi_{n,1}^2 < psi_{n,0} psi_{n,2}. Both strict.
ConditionReport check_h1(const FoxWrightParams& params, int n_max = 16);

// (H2): 0 < alpha_1 <= ... <= alpha_p, 0 < beta_1 <= ... <= beta_p and
// sum_{j<=k} (beta_j - alpha_j) >= 0 for every k. Also reports
// psi_bar = sum (beta_j - alpha_j) and whether psi_bar > 0.
ConditionReport check_h2(std::span<const double> upper_shifts,
                         std::span<const double> lower_shifts);

// Numerical falsifier for complete monotonicity: derivatives 0..max_order by
// Richardson-extrapolated central differences on a grid_n-point grid, each
// required to satisfy (-1)^n f^(n) >= -tol_n with tol_n = 1e-6 * 10^n.
ConditionReport numeric_cm_check(const std::function<double(double)>& f,
                                 double a, double b, int max_order,
                                 int grid_n);

// F(A) F(A+2) - F(A+1)^2, F(w) = series with all weights w. Requires p == q
// and H2 on the shifts.
double turan_in_A(const FoxWrightParams& unit_params, double A, double z);

// Xi(sigma) Xi(sigma+2) - Xi(sigma+1)^2 with Xi(s) = series with prepended
// (s, 1) at +z, 0 < z < 1. Requires H1.
double turan_in_sigma(const FoxWrightParams& params, double sigma, double z);

// curve(t x + (1-t) y) <= curve(x)^t curve(y)^{1-t} (1 + 1e-10) at each
// (x, y, t) triple. Margins are reported in log space.
ConditionReport log_convexity_probe(
    const std::function<double(double)>& curve,
    std::span<const std::array<double, 3>> triples);

// Winding number of the series around 0 along the rectangle
// [x0,x1] x [y0,y1], by phase accumulation with dyadic refinement wherever a
// step exceeds pi/2. Throws if a boundary sample has |value| < 1e-12.
int zero_count_right_half(const FoxWrightParams& params, double x0, double x1,
                          double y0, double y1, int n_boundary = 512);

}  // namespace foxwright
