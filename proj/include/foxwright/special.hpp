#pragma once

#include <cmath>
#include <span>

namespace foxwright::special {

// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286061;

namespace detail {

// B_{2k} / (2k (2k-1)), the Stirling-series coefficients of ln Gamma.
inline constexpr long double kStirling[] = {
    1.0L / 12.0L,       -1.0L / 360.0L,      1.0L / 1260.0L,
    -1.0L / 1680.0L,    1.0L / 1188.0L,      -691.0L / 360360.0L,
    1.0L / 156.0L,      -3617.0L / 122400.0L,
};

inline constexpr long double kHalfLogTwoPi = 0.918938533204672741780329736406L;

// ln Gamma(x) for real x > 0: recurrence push to x >= 12, then Stirling.
// Works for double and long double.
template <typename T>
T log_gamma_positive(T x) {
  T shift = T(0);
  while (x < T(12)) {
    shift += std::log(x);
    x += T(1);
  }
  const T inv = T(1) / x;
  const T inv2 = inv * inv;
  T series = T(0);
  T p = inv;
  for (long double c : kStirling) {
    series += T(c) * p;
    p *= inv2;
  }
  return (x - T(0.5L)) * std::log(x) - x + T(kHalfLogTwoPi) + series - shift;
}

}  // namespace detail

// ln Gamma(x), x > 0. Relative error <= ~1e-14 on [1e-3, 1e6]
// (absolute near the zeros at x = 1, 2).
double log_gamma(double x);

// exp(sum ln Gamma(num) - sum ln Gamma(den)), all entries > 0.
double gamma_ratio(std::span<const double> num, std::span<const double> den);

// psi(x) = Gamma'(x)/Gamma(x), x > 0. Absolute error <= ~1e-13 on [1e-3, 1e6].
double digamma(double x);

// zeta(s, a) = sum_{n>=0} (n+a)^{-s}, s > 1, a > 0.
// Recurrence shift to a >= max(16, 2s), then Euler-Maclaurin with six
// Bernoulli corrections; relative error <= ~1e-12.
double hurwitz_zeta(double s, double a);

// zeta(s) = hurwitz_zeta(s, 1), s > 1.
double riemann_zeta(double s);

}  // namespace foxwright::special
