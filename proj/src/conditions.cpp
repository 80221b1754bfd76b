#include "foxwright/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <json.hpp>

#include "foxwright/errors.hpp"
#include "foxwright/series.hpp"
#include "foxwright/special.hpp"

namespace foxwright {

namespace {

constexpr double kPi = 3.14159265358979323846;

void add_predicate(ConditionReport& report, std::string name, double margin,
                   bool ok) {
  if (!ok && report.satisfied) {
    report.satisfied = false;
    report.first_failure = name;
  }
  report.details.push_back({std::move(name), margin, ok});
}

// n-th central difference with step h.
double central_diff(const std::function<double(double)>& f, double x, int n,
                    double h) {
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= n; ++j) {
    const double node = x + (0.5 * n - j) * h;
    acc += ((j & 1) ? -binom : binom) * f(node);
    binom = binom * (n - j) / (j + 1.0);
  }
  return acc / std::pow(h, n);
}

}  // namespace

std::string to_json_text(const ConditionReport& report) {
  nlohmann::json j;
  j["satisfied"] = report.satisfied;
  if (report.first_failure) {
    j["first_failure"] = *report.first_failure;
  } else {
    j["first_failure"] = nullptr;
  }
  j["details"] = nlohmann::json::array();
  for (const Predicate& p : report.details) {
    j["details"].push_back(
        {{"name", p.name}, {"margin", p.margin}, {"ok", p.ok}});
  }
  return j.dump();
}

ConditionReport check_h1(const FoxWrightParams& params, int n_max) {
  if (n_max < 0 || n_max > 64) {
    throw InputError("check_h1: n_max must lie in [0, 64]");
  }
  ConditionReport report;
  for (int n = 0; n <= n_max; ++n) {
    const double p0 = psi_moment(params, n, 0);
    const double p1 = psi_moment(params, n, 1);
    const double p2 = psi_moment(params, n, 2);
    std::ostringstream n1, n2;
    n1 << "H1[" << n << "]: psi_" << n << ",2 < psi_" << n << ",1";
    n2 << "H1[" << n << "]: psi_" << n << ",1^2 < psi_" << n << ",0 psi_" << n
       << ",2";
    add_predicate(report, n1.str(), p1 - p2, p1 - p2 > 0.0);
    add_predicate(report, n2.str(), p0 * p2 - p1 * p1, p0 * p2 - p1 * p1 > 0.0);
  }
  return report;
}

ConditionReport check_h2(std::span<const double> upper_shifts,
                         std::span<const double> lower_shifts) {
  if (upper_shifts.size() != lower_shifts.size()) {
    throw InputError("check_h2: shift lists must have equal length");
  }
  ConditionReport report;
  double psi_bar = 0.0;
  double prev_a = 0.0, prev_b = 0.0, partial = 0.0;
  for (std::size_t k = 0; k < upper_shifts.size(); ++k) {
    const double a = upper_shifts[k];
    const double b = lower_shifts[k];
    std::ostringstream sa, sb, sd;
    sa << "H2: alpha_" << k + 1 << " positive and nondecreasing";
    sb << "H2: beta_" << k + 1 << " positive and nondecreasing";
    sd << "H2: partial sum dominance at k=" << k + 1;
    add_predicate(report, sa.str(), a - prev_a, a > 0.0 && a >= prev_a);
    add_predicate(report, sb.str(), b - prev_b, b > 0.0 && b >= prev_b);
    partial += b - a;
    add_predicate(report, sd.str(), partial, partial >= 0.0);
    psi_bar += b - a;
    prev_a = a;
    prev_b = b;
  }
  // The extra assumption psi_bar > 0 is reported, not enforced.
  report.details.push_back({"H2: psi_bar > 0 (flag)", psi_bar, psi_bar > 0.0});
  return report;
}

ConditionReport numeric_cm_check(const std::function<double(double)>& f,
                                 double a, double b, int max_order,
                                 int grid_n) {
  if (!(0.0 < a && a < b)) {
    throw InputError("numeric_cm_check: requires 0 < a < b");
  }
  if (max_order < 0 || max_order > 8) {
    throw InputError("numeric_cm_check: max_order must lie in [0, 8]");
  }
  if (grid_n < 1) throw InputError("numeric_cm_check: grid_n must be >= 1");

  const double h = std::min(0.08, (b - a) / (2.0 * std::max(4, max_order)));
  auto safe_f = [&](double x) {
    try {
      return f(x);
    } catch (const std::exception& e) {
      throw NumericError(std::string("numeric_cm_check: evaluator failed: ") +
                         e.what());
    }
  };

  ConditionReport report;
  for (int n = 0; n <= max_order; ++n) {
    const double tol_n = 1e-6 * std::pow(10.0, n);
    double worst = std::numeric_limits<double>::infinity();
    double worst_x = a;
    for (int i = 0; i < grid_n; ++i) {
      const double x = a + (i + 0.5) * (b - a) / grid_n;
      const double d_h = central_diff(safe_f, x, n, h);
      const double d_h2 = central_diff(safe_f, x, n, 0.5 * h);
      const double richardson = (4.0 * d_h2 - d_h) / 3.0;
      const double signed_value = ((n & 1) ? -1.0 : 1.0) * richardson;
      if (signed_value < worst) {
        worst = signed_value;
        worst_x = x;
      }
    }
    std::ostringstream name;
    name << "(-1)^" << n << " f^(" << n << ") >= -" << tol_n << " (min at x="
         << worst_x << ")";
    add_predicate(report, name.str(), worst, worst >= -tol_n);
  }
  return report;
}

double turan_in_A(const FoxWrightParams& unit_params, double A, double z) {
  if (unit_params.p() != unit_params.q()) {
    throw InputError("turan_in_A: requires p == q");
  }
  if (!(A > 0.0)) throw InputError("turan_in_A: A must be positive");
  std::vector<double> up, lo;
  for (const ParamPair& pp : unit_params.upper()) up.push_back(pp.shift);
  for (const ParamPair& pp : unit_params.lower()) lo.push_back(pp.shift);
  const ConditionReport h2 = check_h2(up, lo);
  if (!h2.satisfied) {
    throw HypothesisError("turan_in_A: shifts do not satisfy H2");
  }
  const double f0 = eval_series(with_all_weights(unit_params, A), z);
  const double f2 = eval_series(with_all_weights(unit_params, A + 2.0), z);
  const double f1 = eval_series(with_all_weights(unit_params, A + 1.0), z);
  return f0 * f2 - f1 * f1;
}

double turan_in_sigma(const FoxWrightParams& params, double sigma, double z) {
  if (!(sigma > 0.0)) throw InputError("turan_in_sigma: sigma must be positive");
  if (!(z > 0.0) || !(z < 1.0)) {
    throw InputError("turan_in_sigma: z must lie in (0, 1)");
  }
  if (!check_h1(params).satisfied) {
    throw HypothesisError("turan_in_sigma: params do not satisfy H1");
  }
  auto xi = [&](double s) {
    return eval_series(prepend_upper(params, {s, 1.0}), z);
  };
  const double x0 = xi(sigma);
  const double x2 = xi(sigma + 2.0);
  const double x1 = xi(sigma + 1.0);
  return x0 * x2 - x1 * x1;
}

ConditionReport log_convexity_probe(
    const std::function<double(double)>& curve,
    std::span<const std::array<double, 3>> triples) {
  ConditionReport report;
  int idx = 0;
  for (const auto& [x, y, t] : triples) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw InputError("log_convexity_probe: t must lie in [0, 1]");
    }
    const double cx = curve(x), cy = curve(y);
    const double mid = curve(t * x + (1.0 - t) * y);
    if (!(cx > 0.0) || !(cy > 0.0) || !(mid > 0.0)) {
      throw InputError("log_convexity_probe: curve must be positive");
    }
    // log-space margin of curve(tx+(1-t)y) <= curve(x)^t curve(y)^{1-t}
    const double margin = t * std::log(cx) + (1.0 - t) * std::log(cy) +
                          std::log1p(1e-10) - std::log(mid);
    std::ostringstream name;
    name << "log-convex triple " << idx++ << " (x=" << x << ", y=" << y
         << ", t=" << t << ")";
    add_predicate(report, name.str(), margin, margin >= 0.0);
  }
  return report;
}

namespace {

// Phase step between consecutive boundary samples, refined dyadically until
// each step is below pi/2.
double phase_walk(const FoxWrightParams& params, std::complex<double> za,
                  std::complex<double> zb, std::complex<double> fa,
                  std::complex<double> fb, int depth) {
  const double step = std::arg(fb / fa);
  if (std::abs(step) <= 0.5 * kPi) return step;
  if (depth <= 0) {
    throw NumericError(
        "zero_count: phase step will not settle (zero near the boundary?)");
  }
  const std::complex<double> zm = 0.5 * (za + zb);
  const std::complex<double> fm = eval_series(params, zm);
  if (std::abs(fm) < 1e-12) {
    throw NumericError("zero_count: boundary sample too close to a zero");
  }
  return phase_walk(params, za, zm, fa, fm, depth - 1) +
         phase_walk(params, zm, zb, fm, fb, depth - 1);
}

}  // namespace

int zero_count_right_half(const FoxWrightParams& params, double x0, double x1,
                          double y0, double y1, int n_boundary) {
  if (!(x0 < x1) || !(y0 < y1)) {
    throw InputError("zero_count: rectangle must satisfy x0 < x1, y0 < y1");
  }
  if (n_boundary < 16) throw InputError("zero_count: n_boundary too small");

  // Counterclockwise corners.
  const std::complex<double> corners[4] = {
      {x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
  std::vector<std::complex<double>> pts;
  const double perimeter = 2.0 * ((x1 - x0) + (y1 - y0));
  for (int side = 0; side < 4; ++side) {
    const std::complex<double> a = corners[side];
    const std::complex<double> b = corners[(side + 1) % 4];
    const int m = std::max(
        8, static_cast<int>(std::lround(n_boundary * std::abs(b - a) /
                                        perimeter)));
    for (int i = 0; i < m; ++i) {
      pts.push_back(a + (b - a) * (static_cast<double>(i) / m));
    }
  }
  pts.push_back(pts.front());

  std::vector<std::complex<double>> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    vals[i] = eval_series(params, pts[i]);
    if (std::abs(vals[i]) < 1e-12) {
      throw NumericError("zero_count: boundary sample too close to a zero");
    }
  }

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    total += phase_walk(params, pts[i], pts[i + 1], vals[i], vals[i + 1], 40);
  }
  return static_cast<int>(std::llround(total / (2.0 * kPi)));
}

}  // namespace foxwright
