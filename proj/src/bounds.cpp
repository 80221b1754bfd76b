#include "foxwright/bounds.hpp"

#include <cmath>
#include <vector>

#include <json.hpp>

#include "foxwright/conditions.hpp"
#include "foxwright/errors.hpp"
#include "foxwright/hfunction.hpp"
#include "foxwright/series.hpp"
#include "foxwright/special.hpp"

namespace foxwright {

bool envelope_contained(const Envelope& e, double tol) {
  if (!e.value) return true;
  return e.lower - tol <= *e.value && *e.value <= e.upper + tol;
}

std::string to_json_text(const Envelope& e, double z) {
  nlohmann::json j;
  j["z"] = z;
  j["lower"] = e.lower;
  if (e.value) {
    j["value"] = *e.value;
  } else {
    j["value"] = nullptr;
  }
  j["upper"] = e.upper;
  j["contained"] = envelope_contained(e);
  if (e.unchecked) j["unchecked"] = true;
  return j.dump();
}

namespace {

void require_luke_hypotheses(const FoxWrightParams& params, bool unchecked) {
  if (unchecked) return;
  const ConvergenceData cd = convergence_data(params);
  if (!cd.balanced) {
    throw HypothesisError("luke bounds: requires balanced weights");
  }
  if (!(cd.mu > 0.0)) {
    throw HypothesisError("luke bounds: requires mu > 0");
  }
  if (!check_h1(params).satisfied) {
    throw HypothesisError("luke bounds: params do not satisfy H1");
  }
}

}  // namespace

Envelope luke_bounds(const FoxWrightParams& params, double z, bool with_value,
                     bool unchecked) {
  if (!(z >= 0.0)) throw InputError("luke_bounds: z must be nonnegative");
  require_luke_hypotheses(params, unchecked);
  const ConvergenceData cd = convergence_data(params);
  const double psi00 = psi_moment(params, 0, 0);
  const double psi01 = psi_moment(params, 0, 1);

  Envelope e;
  e.unchecked = unchecked;
  e.lower = std::exp(std::log(psi00) - psi01 * z / psi00);
  e.upper = psi00 + (psi01 / cd.rho) * std::expm1(-cd.rho * z);
  if (with_value) e.value = eval_series(params, -z);
  return e;
}

Envelope luke_bounds_lambda(const FoxWrightParams& params, double lambda,
                            double z, bool with_value, bool unchecked) {
  if (!(lambda > 0.0)) {
    throw InputError("luke_bounds_lambda: lambda must be positive");
  }
  if (!(z >= 0.0)) throw InputError("luke_bounds_lambda: z must be nonnegative");
  require_luke_hypotheses(params, unchecked);
  const ConvergenceData cd = convergence_data(params);
  const double psi00 = psi_moment(params, 0, 0);
  const double psi01 = psi_moment(params, 0, 1);
  const double lg = special::log_gamma(lambda);

  Envelope e;
  e.unchecked = unchecked;
  e.lower = std::exp(std::log(psi00) + lg -
                     lambda * std::log1p(psi01 * z / psi00));
  e.upper = std::exp(lg) *
            (psi00 - (psi01 / cd.rho) *
                         (-std::expm1(-lambda * std::log1p(cd.rho * z))));
  if (with_value) {
    // The (lambda,1)-prepended series sits on the delta == -1 boundary;
    // take the value from the Laplace-type quadrature instead.
    e.value = z == 0.0 ? std::exp(lg) * psi00
                       : lambda_laplace_integral(params, lambda, z, 1.0);
  }
  return e;
}

Envelope pfq_luke(std::span<const double> upper_shifts,
                  std::span<const double> lower_shifts, double sigma, double z,
                  bool with_value, bool unchecked) {
  if (!(sigma > 0.0)) throw InputError("pfq_luke: sigma must be positive");
  if (!(z > 0.0)) throw InputError("pfq_luke: z must be positive");
  if (upper_shifts.size() != lower_shifts.size() || upper_shifts.empty()) {
    throw InputError("pfq_luke: shift lists must be nonempty and equal length");
  }
  if (!unchecked) {
    const ConditionReport h2 = check_h2(upper_shifts, lower_shifts);
    if (!h2.satisfied) {
      throw HypothesisError("pfq_luke: shifts do not satisfy H2");
    }
    for (std::size_t i = 0; i < upper_shifts.size(); ++i) {
      if (!(upper_shifts[i] <= lower_shifts[i])) {
        throw HypothesisError("pfq_luke: requires alpha_j <= beta_j pairwise");
      }
    }
  }
  double log_theta = 0.0;
  for (std::size_t i = 0; i < upper_shifts.size(); ++i) {
    log_theta += std::log(upper_shifts[i]) - std::log(lower_shifts[i]);
  }
  const double theta = std::exp(log_theta);

  Envelope e;
  e.unchecked = unchecked;
  e.lower = std::exp(-sigma * std::log1p(theta * z));
  e.upper = 1.0 - theta + theta * std::exp(-sigma * std::log1p(z));
  if (with_value && z < 1.0) {
    std::vector<double> up;
    up.reserve(upper_shifts.size() + 1);
    up.push_back(sigma);
    up.insert(up.end(), upper_shifts.begin(), upper_shifts.end());
    e.value = eval_pfq(up, lower_shifts, -z);
  }
  return e;
}

}  // namespace foxwright
