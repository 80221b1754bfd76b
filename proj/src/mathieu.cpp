#include "foxwright/mathieu.hpp"

#include <cmath>

#include "foxwright/errors.hpp"
#include "foxwright/quadrature.hpp"
#include "foxwright/series.hpp"
#include "foxwright/special.hpp"

namespace foxwright {

namespace {

void validate_spec(const MathieuSpec& s) {
  if (!(s.alpha > 0.0) || !(s.beta > 0.0) || !(s.mu > 0.0) || !(s.nu > 0.0)) {
    throw InputError("mathieu: alpha, beta, mu, nu must be positive");
  }
  if (!(s.r >= 0.0)) throw InputError("mathieu: r must be nonnegative");
}

void require_nu_alpha_one(const MathieuSpec& s) {
  if (std::abs(s.nu * s.alpha - 1.0) > 1e-12) {
    throw HypothesisError("mathieu bounds: require nu * alpha == 1");
  }
}

double term(const MathieuSpec& s, double x) {
  const double na = s.nu * s.alpha;
  const double nb = s.nu * s.beta;
  return 2.0 * std::pow(x, nb) / std::pow(s.r * s.r + std::pow(x, na), s.mu);
}

// int_K^inf of the term envelope, via x = K e^w.
double tail_integral(const MathieuSpec& s, double K, double exponent) {
  const double w_max = std::min(45.0 / (exponent - 1.0), 2000.0);
  const QuadResult qr = integrate(
      [&](double w) {
        const double x = K * std::exp(w);
        return term(s, x) * x;
      },
      0.0, w_max, 1e-14 * term(s, K) * K, 1e-12, 16);
  return qr.value;
}

}  // namespace

double mathieu_exponent(const MathieuSpec& spec) {
  return spec.nu * (spec.mu * spec.alpha - spec.beta);
}

double mathieu_sum(const MathieuSpec& spec, double tol) {
  validate_spec(spec);
  const double s = mathieu_exponent(spec);
  if (!(s > 1.0 + 1e-12)) {
    throw DivergenceError("mathieu_sum: nu(mu alpha - beta) must exceed 1");
  }
  if (!(tol > 0.0)) throw InputError("mathieu_sum: tol must be positive");

  double sum = 0.0, carry = 0.0;
  long k = 1;
  for (;;) {
    for (long stop = k + 4096; k < stop; ++k) {
      const double y = term(spec, static_cast<double>(k)) - carry;
      const double t = sum + y;
      carry = (t - sum) - y;
      sum = t;
    }
    const double K = static_cast<double>(k - 1);
    // Bracket: sum_{j>K} term(j) lies in [int_{K+1}^inf, int_K^inf].
    if (0.5 * term(spec, K + 0.5) < 0.8 * tol) {
      const double hi = tail_integral(spec, K, s);
      const double lo = tail_integral(spec, K + 1.0, s);
      if (0.5 * (hi - lo) < tol) {
        return sum + 0.5 * (hi + lo);
      }
    }
    if (k > 300'000'000) {
      throw NoConvergenceError("mathieu_sum: bracket did not reach tolerance");
    }
  }
}

MathieuBounds mathieu_bounds(const MathieuSpec& spec) {
  validate_spec(spec);
  require_nu_alpha_one(spec);
  const double s = mathieu_exponent(spec);
  if (!(s > 1.0)) {
    throw HypothesisError("mathieu_bounds: require nu(mu alpha - beta) > 1");
  }
  const double w = spec.mu / s;
  const double r2 = spec.r * spec.r;
  MathieuBounds b;
  b.exponent = s;
  b.weight = w;
  b.lower = 2.0 * special::hurwitz_zeta(s, w * r2 + 1.0);
  b.upper = 2.0 * (1.0 - w) * special::riemann_zeta(s) +
            2.0 * w * special::hurwitz_zeta(s, r2 + 1.0);
  return b;
}

MathieuBounds mathieu_bounds_digamma(const MathieuSpec& spec) {
  validate_spec(spec);
  require_nu_alpha_one(spec);
  const double s = mathieu_exponent(spec);
  if (!(s > 2.0)) {
    throw HypothesisError(
        "mathieu_bounds_digamma: require nu(mu alpha - beta) > 2");
  }
  const double w = spec.mu / s;
  const double r2 = spec.r * spec.r;
  MathieuBounds b;
  b.exponent = s;
  b.weight = w;
  b.lower =
      2.0 * std::exp(-(s - 1.0) * special::digamma(w * r2 + 1.5)) / (s - 1.0);
  b.upper = 2.0 * (1.0 - w) *
                std::exp((s - 1.0) * special::euler_gamma) / (s - 1.0) +
            2.0 * w * std::exp(-(s - 1.0) * special::digamma(r2 + 1.0)) /
                (s - 1.0);
  return b;
}

ResidualReport verify_mathieu_integral_rep(const MathieuSpec& spec,
                                           double quad_tol) {
  validate_spec(spec);
  require_nu_alpha_one(spec);
  const double s = mathieu_exponent(spec);
  if (!(s > 1.0)) {
    throw HypothesisError("mathieu integral rep: require s > 1");
  }
  const double sum = mathieu_sum(spec, std::min(0.01 * quad_tol, 1e-10));

  const FoxWrightParams inner({{spec.mu, 1.0}}, {{s, 1.0}});
  const double r2 = spec.r * spec.r;
  // x = e^v; integrand x^s / (e^x - 1) * inner(-r^2 x).
  const double v_min = -40.0 / (s - 1.0);
  double x_hi = 50.0 + 10.0 * s;
  const double v_max = std::log(x_hi);
  const double scale = std::max(sum, 1.0);
  const QuadResult qr = integrate(
      [&](double v) {
        const double x = std::exp(v);
        return std::pow(x, s) / std::expm1(x) * eval_series(inner, -r2 * x);
      },
      v_min, v_max, 0.02 * quad_tol * scale, 0.05 * quad_tol, 15);

  const double integral =
      2.0 * std::exp(-special::log_gamma(spec.mu)) * qr.value;
  ResidualReport r;
  r.series = sum;
  r.integral = integral;
  r.abs_residual = std::abs(sum - integral);
  const double m = std::max(std::abs(sum), std::abs(integral));
  r.rel_residual = m > 0.0 ? r.abs_residual / m : r.abs_residual;
  if (!qr.converged) r.warnings.push_back("quadrature tolerance not reached");
  return r;
}

}  // namespace foxwright
