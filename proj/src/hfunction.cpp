#include "foxwright/hfunction.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <json.hpp>

#include "foxwright/errors.hpp"
#include "foxwright/quadrature.hpp"
#include "foxwright/series.hpp"
#include "foxwright/special.hpp"

namespace foxwright {

namespace detail {

std::complex<double> log_gamma_complex(std::complex<double> w) {
  if (!(w.real() > 0.0)) {
    throw InputError("log_gamma_complex: requires Re(w) > 0");
  }
  std::complex<double> shift{0.0, 0.0};
  while (std::abs(w) < 12.0) {
    shift += std::log(w);
    w += 1.0;
  }
  const std::complex<double> inv = 1.0 / w;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series{0.0, 0.0};
  std::complex<double> p = inv;
  for (long double c : special::detail::kStirling) {
    series += static_cast<double>(c) * p;
    p *= inv2;
  }
  return (w - 0.5) * std::log(w) - w +
         static_cast<double>(special::detail::kHalfLogTwoPi) + series - shift;
}

}  // namespace detail

namespace {

constexpr double kPi = 3.14159265358979323846;
// Minimum T*ln(rho/t) for the integration-by-parts tail correction.
constexpr double kIbpThreshold = 3.0;
// The fixed-step trapezoid keeps exponential-cancellation accuracy only up
// to |ln t| of a few; beyond this the evaluation is handed to the small-t
// power model inside integrate_weighted.
constexpr double kDeepTailLogT = 8.0;

double log_rho_of(const FoxWrightParams& params) {
  double acc = 0.0;
  for (const ParamPair& pp : params.upper()) {
    acc += pp.weight * std::log(pp.weight);
  }
  for (const ParamPair& pp : params.lower()) {
    acc -= pp.weight * std::log(pp.weight);
  }
  return acc;
}

// Smallest pole exponent min(alpha_j/A_j), its multiplicity, and the next
// exponent of the pole lattice {(alpha_j + n)/A_j}. These drive the small-t
// behavior t^{e1} (times log t for a repeated leading pole).
struct PoleLattice {
  double e1;
  int multiplicity;
  double e2;
};

PoleLattice pole_lattice(const FoxWrightParams& params) {
  PoleLattice out{std::numeric_limits<double>::infinity(), 0,
                  std::numeric_limits<double>::infinity()};
  for (const ParamPair& pp : params.upper()) {
    out.e1 = std::min(out.e1, pp.shift / pp.weight);
  }
  for (const ParamPair& pp : params.upper()) {
    for (int n = 0; n < 3; ++n) {
      const double e = (pp.shift + n) / pp.weight;
      if (std::abs(e - out.e1) < 1e-9) {
        if (n == 0) ++out.multiplicity;
      } else if (e > out.e1) {
        out.e2 = std::min(out.e2, e);
      }
    }
  }
  if (!std::isfinite(out.e2)) out.e2 = out.e1 + 1.0;
  return out;
}

ResidualReport make_report(double series, double integral,
                           std::vector<std::string> warnings) {
  ResidualReport r;
  r.series = series;
  r.integral = integral;
  r.abs_residual = std::abs(series - integral);
  const double scale = std::max(std::abs(series), std::abs(integral));
  r.rel_residual = scale > 0.0 ? r.abs_residual / scale : r.abs_residual;
  r.warnings = std::move(warnings);
  return r;
}

std::vector<std::string> integral_warnings(const WeightedIntegral& wi) {
  std::vector<std::string> w;
  if (!wi.converged) w.push_back("quadrature tolerance not reached");
  if (wi.worst_tail > 1e-6) {
    w.push_back("h-density truncation estimate exceeds 1e-6");
  }
  return w;
}

}  // namespace

ContourSpec ContourSpec::defaults(const FoxWrightParams& params) {
  const ConvergenceData cd = convergence_data(params);
  return {std::max(cd.gamma_pole + 1.0, 1.0), 200.0, 0.05};
}

std::complex<double> mellin_integrand(const FoxWrightParams& params,
                                      std::complex<double> s) {
  const ConvergenceData cd = convergence_data(params);
  if (!(s.real() > cd.gamma_pole)) {
    throw InputError("mellin_integrand: Re(s) must exceed gamma_pole");
  }
  std::complex<double> acc{0.0, 0.0};
  for (const ParamPair& pp : params.upper()) {
    acc += detail::log_gamma_complex(pp.weight * s + pp.shift);
  }
  for (const ParamPair& pp : params.lower()) {
    const std::complex<double> arg = pp.weight * s + pp.shift;
    if (!(arg.real() > 0.0)) {
      throw InputError(
          "mellin_integrand: lower gamma argument in the left half-plane");
    }
    acc -= detail::log_gamma_complex(arg);
  }
  return std::exp(acc);
}

HDensity::HDensity(HDensitySpec spec)
    : spec_(std::move(spec)), cd_(convergence_data(spec_.params)) {
  if (!cd_.balanced) {
    throw HypothesisError(
        "h_density: requires balanced weights (sum A == sum B)");
  }
  if (!(cd_.mu > 0.0)) {
    throw HypothesisError("h_density: requires mu > 0");
  }
  const ContourSpec& c = spec_.contour;
  if (!(c.step > 0.0) || !(c.half_length > 0.0)) {
    throw InputError("contour: step and half_length must be positive");
  }
  if (!(c.offset > cd_.gamma_pole)) {
    throw InputError("contour: offset must exceed gamma_pole");
  }
  const double n_real = c.half_length / c.step;
  const long n = std::llround(n_real);
  if (std::abs(n * c.step - c.half_length) >
      1e-9 * std::max(1.0, c.half_length)) {
    throw InputError("contour: half_length/step must be an integer");
  }
  if (n < 16) throw InputError("contour: too few samples (need >= 16)");

  log_rho_ = log_rho_of(spec_.params);
  samples_.resize(static_cast<std::size_t>(n) + 1);
  abs_sample_sum_ = 0.0;
  for (long j = 0; j <= n; ++j) {
    samples_[j] = mellin_integrand(
        spec_.params, std::complex<double>(c.offset, j * c.step));
    abs_sample_sum_ += std::abs(samples_[j]) * c.step;
  }

  // a(u) = M(c+iu) e^{-iu ln rho} near u = T; one-sided stencils for a'(T),
  // a''(T), a'''(T). The samples carry ~1e-12 relative phase noise from the
  // log-gamma accumulation, so the stencil is spread over ~T/16 to keep the
  // difference quotients out of the noise.
  const long stride = std::max<long>(1, n / 64);
  std::complex<double> a[5];
  for (int m = 0; m < 5; ++m) {
    const long j = n - (4 - m) * stride;
    const double u = j * c.step;
    a[m] = samples_[j] * std::polar(1.0, -u * log_rho_);
  }
  const double H = stride * c.step;
  tail_.a = a[4];
  tail_.ap = (3.0 * a[0] - 16.0 * a[1] + 36.0 * a[2] - 48.0 * a[3] +
              25.0 * a[4]) /
             (12.0 * H);
  tail_.app = (11.0 * a[0] - 56.0 * a[1] + 114.0 * a[2] - 104.0 * a[3] +
               35.0 * a[4]) /
              (12.0 * H * H);
  tail_.appp = (3.0 * a[0] - 14.0 * a[1] + 24.0 * a[2] - 18.0 * a[3] +
                5.0 * a[4]) /
               (2.0 * H * H * H);
}

std::complex<double> HDensity::contour_sum(double log_t) const {
  const double h = spec_.contour.step;
  const std::size_t n = samples_.size() - 1;
  const std::complex<double> rot = std::polar(1.0, -h * log_t);
  std::complex<double> e{1.0, 0.0};
  std::complex<double> sum = 0.5 * samples_[0];
  std::complex<double> carry{0.0, 0.0};
  for (std::size_t j = 1; j <= n; ++j) {
    if (j % 1024 == 0) {
      e = std::polar(1.0, -h * log_t * static_cast<double>(j));
    } else {
      e *= rot;
    }
    std::complex<double> term = samples_[j] * e;
    if (j == n) term *= 0.5;
    const std::complex<double> y = term - carry;
    const std::complex<double> t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum * h;
}

DensityValue HDensity::evaluate(double t) const {
  if (!(t > 0.0)) throw InputError("h_density: t must be positive");
  if (t >= cd_.rho) return {0.0, 0.0};

  const double w = std::log(t);
  const double T = spec_.contour.half_length;
  const double h = spec_.contour.step;
  const double L = log_rho_ - w;  // ln(rho/t) > 0
  const double base = std::exp(-spec_.contour.offset * w) / kPi;
  const std::complex<double> i_unit{0.0, 1.0};
  const std::complex<double> iL = i_unit * L;
  const std::complex<double> phase = std::polar(1.0, T * L);
  const double tiny = 1e-300;

  std::complex<double> total = contour_sum(w);

  // Euler-Maclaurin endpoint terms of the [0, T] trapezoid. At u = 0 the
  // odd derivatives are purely imaginary and drop out under Re; only the
  // u = T end contributes.
  const std::complex<double> gp = (tail_.ap + iL * tail_.a) * phase;
  const std::complex<double> gppp =
      (tail_.appp + 3.0 * iL * tail_.app + 3.0 * iL * iL * tail_.ap +
       iL * iL * iL * tail_.a) *
      phase;
  total += -(h * h / 12.0) * gp + (h * h * h * h / 720.0) * gppp;
  const double em_next =
      (std::pow(h, 6) / 30240.0) *
      (std::abs(tail_.a) * std::pow(L, 5) + 10.0 * std::abs(tail_.app) * L * L * L);

  double est;
  if (T * L >= kIbpThreshold) {
    total += phase * (i_unit * tail_.a / L - tail_.ap / (L * L) -
                      i_unit * tail_.app / (L * L * L) +
                      tail_.appp / (L * L * L * L));
    const double decay =
        std::max(std::abs(tail_.ap) / std::max(std::abs(tail_.a), tiny),
                 std::abs(tail_.app) / std::max(std::abs(tail_.ap), tiny)) /
        L;
    est = std::abs(tail_.appp) / (L * L * L * L) * std::min(1.0, decay);
  } else {
    // Too close to the support endpoint for the asymptotic correction.
    est = std::abs(tail_.a) / std::max(L, 1.0 / T);
  }
  est += em_next;
  // Round-off floor of the cancelling sum.
  est += 16.0 * std::numeric_limits<double>::epsilon() * abs_sample_sum_;
  return {base * total.real(), base * est};
}

WeightedIntegral HDensity::integrate_weighted(
    const std::function<double(double)>& g, double tol) const {
  const double T = spec_.contour.half_length;
  const double rho = cd_.rho;
  const double mu = cd_.mu;
  const double mass = psi_moment(spec_.params, 0, 0);
  const PoleLattice lattice = pole_lattice(spec_.params);
  const double mhat = lattice.e1;

  WeightedIntegral out;

  // Endpoint strip [t1, rho): model (rho-t)^{mu-1} d(rho-t) with d a cubic
  // through four fit points placed where the tail-corrected evaluation is
  // already accurate (T * ln(rho/t) in {25, 40, 60, 85}).
  constexpr double kFit[4] = {25.0, 40.0, 60.0, 85.0};
  double xi[4], dval[4];
  double fit_tail = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double ti = rho * std::exp(-kFit[i] / T);
    const DensityValue vi = evaluate(ti);
    fit_tail = std::max(fit_tail, vi.tail_estimate);
    xi[i] = rho - ti;
    dval[i] = vi.value * std::pow(xi[i], 1.0 - mu);
  }
  out.worst_tail = fit_tail;
  const double xi1 = xi[0];
  auto d_model = [&](double x) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      double li = dval[i];
      for (int j = 0; j < 4; ++j) {
        if (j != i) li *= (x - xi[j]) / (xi[i] - xi[j]);
      }
      acc += li;
    }
    return acc;
  };
  auto strip_f = [&](double v) {
    const double x = xi1 * std::pow(v, 1.0 / mu);
    const double tt = rho - x;
    return g(tt) * d_model(x) / tt;
  };
  const QuadResult strip =
      integrate(strip_f, 0.0, 1.0, 1e-12 * std::max(mass, 1.0), 1e-10, 10);
  const double strip_scale = std::pow(xi1, mu) / mu;
  out.value += strip.value * strip_scale;
  out.abs_error += strip.abs_error * strip_scale + fit_tail * xi1;

  // Deep tail [0, t_cut): small-t model with the known leading exponent.
  //   simple leading pole:   t^{e1} (P + Q t^{e2-e1})
  //   repeated leading pole: t^{e1} (P + Q ln t)
  const double t_cut = std::min(0.25 * rho, std::exp(-kDeepTailLogT));
  double x_cut = -std::log(t_cut);
  const bool deep_negligible = mhat * (x_cut + std::log(rho)) > 38.0;
  if (!deep_negligible) {
    const double ta = t_cut;
    const double tb = t_cut * std::exp(1.2);
    const DensityValue va = evaluate(ta);
    const DensityValue vb = evaluate(tb);
    out.worst_tail = std::max({out.worst_tail, va.tail_estimate,
                               vb.tail_estimate});
    const bool log_model = lattice.multiplicity > 1;
    auto basis2 = [&](double t) {
      return log_model ? std::log(t) : std::pow(t, lattice.e2 - lattice.e1);
    };
    const double fa = va.value * std::pow(ta, -mhat);
    const double fb = vb.value * std::pow(tb, -mhat);
    const double ba = basis2(ta), bb = basis2(tb);
    const double Q = (fb - fa) / (bb - ba);
    const double P = fa - Q * ba;
    auto model = [&](double t) {
      return std::pow(t, mhat) * (P + Q * basis2(t));
    };
    // int_0^{t_cut} g(t) model(t) dt/t, with t = t_cut e^{-y}.
    const double y_max = 38.0 / mhat;
    const QuadResult deep = integrate(
        [&](double y) {
          const double tt = t_cut * std::exp(-y);
          return g(tt) * model(tt);
        },
        0.0, y_max, 1e-12 * std::max(mass, 1.0), 1e-10, 12);
    out.value += deep.value;
    out.abs_error += deep.abs_error +
                     std::max(va.tail_estimate, vb.tail_estimate) *
                         std::pow(ta, mhat) / std::max(mhat, 1e-3);
  } else {
    out.abs_error += mass * std::pow(t_cut / rho, mhat);
  }

  // Interior [x_cut region boundary, t1], integrated in x = -ln t.
  const double x1 = kFit[0] / T - std::log(rho);
  double worst = out.worst_tail;
  auto f = [&](double x) {
    const double tt = std::exp(-x);
    const DensityValue dv = evaluate(tt);
    worst = std::max(worst, dv.tail_estimate);
    return g(tt) * dv.value;
  };
  if (x_cut > x1) {
    const QuadResult inner =
        integrate(f, x1, x_cut, 0.5 * tol * std::max(mass, 1e-30), tol, 16);
    out.value += inner.value;
    out.abs_error += inner.abs_error;
    out.converged = out.converged && inner.converged;
  }
  out.worst_tail = worst;
  return out;
}

double h_density(const HDensitySpec& spec, double t) {
  return HDensity(spec).evaluate(t).value;
}

std::string to_json_text(const ResidualReport& report) {
  nlohmann::json j;
  j["series"] = report.series;
  j["integral"] = report.integral;
  j["abs_residual"] = report.abs_residual;
  j["rel_residual"] = report.rel_residual;
  j["warnings"] = report.warnings;
  return j.dump();
}

ResidualReport verify_laplace_rep(const HDensitySpec& spec, double z) {
  HDensity d(spec);
  const double series = eval_series(spec.params, z);
  const WeightedIntegral wi =
      d.integrate_weighted([z](double t) { return std::exp(z * t); });
  return make_report(series, wi.value, integral_warnings(wi));
}

ResidualReport verify_stieltjes_rep(const HDensitySpec& spec, double sigma,
                                    double z) {
  if (!(sigma > 0.0)) throw InputError("stieltjes: sigma must be positive");
  if (!(z > 0.0) || !(z < 1.0)) {
    throw InputError("stieltjes: z must lie in (0, 1)");
  }
  HDensity d(spec);
  const double series =
      eval_series(prepend_upper(spec.params, {sigma, 1.0}), -z);
  const WeightedIntegral wi = d.integrate_weighted([sigma, z](double t) {
    return std::exp(-sigma * std::log1p(t * z));
  });
  return make_report(series, wi.value, integral_warnings(wi));
}

ResidualReport verify_reciprocal_laplace(const FoxWrightParams& params,
                                         double z, double quad_tol) {
  if (!(z > 0.0)) throw InputError("reciprocal Laplace: z must be positive");
  const double series = eval_series(params, 1.0 / z);
  const double psi00 = psi_moment(params, 0, 0);
  const FoxWrightParams inner =
      append_lower(shift_params(params, 1), {2.0, 1.0});
  const double scale = std::max(psi00, std::abs(series));

  double t_hi = 1.0;
  for (;;) {
    const double w_val = eval_series(inner, t_hi);
    if (!std::isfinite(w_val)) {
      throw NoConvergenceError(
          "reciprocal Laplace: inner series overflows before e^{-zt} decays");
    }
    if (std::exp(-z * t_hi) * w_val <= 1e-16 * scale) break;
    t_hi *= 2.0;
    if (t_hi > 1e9) {
      throw NoConvergenceError("reciprocal Laplace: integrand does not decay");
    }
  }
  const QuadResult qr = integrate(
      [&](double t) { return std::exp(-z * t) * eval_series(inner, t); }, 0.0,
      t_hi, 0.05 * quad_tol * scale, 0.1 * quad_tol, 15);
  std::vector<std::string> warnings;
  if (!qr.converged) warnings.push_back("quadrature tolerance not reached");
  return make_report(series, psi00 + qr.value, std::move(warnings));
}

double lambda_laplace_integral(const FoxWrightParams& params, double lambda,
                               double omega, double z, double quad_tol) {
  if (!(lambda > 0.0)) {
    throw InputError("lambda transform: lambda must be positive");
  }
  if (!(z > 0.0)) throw InputError("lambda transform: z must be positive");
  if (omega < 0.0) {
    throw InputError("lambda transform: omega must be nonnegative");
  }
  const double psi00 = psi_moment(params, 0, 0);
  const double scale = std::exp(special::log_gamma(lambda)) * psi00;

  // t = e^v; integrand e^{-z e^v + lambda v} series(-omega e^v).
  const double v_min = -(40.0 + std::log1p(1.0 / lambda)) / lambda;
  double v_hi = std::log(std::max(1.0, 1.0 / z));
  while (z * std::exp(v_hi) - lambda * v_hi < 45.0) v_hi += 0.5;
  const QuadResult qr = integrate(
      [&](double v) {
        const double t = std::exp(v);
        return std::exp(-z * t + lambda * v) *
               eval_series(params, -omega * t);
      },
      v_min, v_hi, 0.05 * quad_tol * scale, 0.1 * quad_tol, 15);
  return qr.value;
}

ResidualReport verify_lambda_transform(const FoxWrightParams& params,
                                       double lambda, double omega, double z,
                                       double quad_tol) {
  const double lhs =
      std::pow(z, -lambda) *
      eval_series(prepend_upper(params, {lambda, 1.0}), -omega / z);
  const double rhs =
      lambda_laplace_integral(params, lambda, omega, z, quad_tol);
  return make_report(lhs, rhs, {});
}

ResidualReport meijer_g_reduction_check(const HDensitySpec& spec, double t) {
  double A = 0.0;
  if (!all_weights_equal(spec.params, &A)) {
    throw InputError("meijer reduction: all weights must be equal");
  }
  if (!(t > 0.0)) throw InputError("meijer reduction: t must be positive");
  HDensity dA(spec);
  const DensityValue lhs = dA.evaluate(t);

  const FoxWrightParams unit = with_unit_weights(spec.params);
  ContourSpec cs = ContourSpec::defaults(unit);
  cs.half_length = spec.contour.half_length;
  cs.step = spec.contour.step;
  HDensity dU({unit, cs});
  const DensityValue rhs = dU.evaluate(std::pow(t, 1.0 / A));

  std::vector<std::string> warnings;
  if (std::max(lhs.tail_estimate, rhs.tail_estimate) > 1e-6) {
    warnings.push_back("h-density truncation estimate exceeds 1e-6");
  }
  return make_report(lhs.value, rhs.value / A, std::move(warnings));
}

}  // namespace foxwright
