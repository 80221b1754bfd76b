#include "foxwright/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "foxwright/errors.hpp"
#include "foxwright/special.hpp"

namespace foxwright {

namespace {

void validate_pairs(const std::vector<ParamPair>& pairs, const char* side) {
  for (const ParamPair& pp : pairs) {
    if (!(pp.weight > 0.0) || !std::isfinite(pp.weight)) {
      throw InputError(std::string("params: ") + side +
                       " weight must be positive and finite");
    }
    if (!(pp.shift > 0.0) || !std::isfinite(pp.shift)) {
      throw InputError(std::string("params: ") + side +
                       " shift must be positive and finite");
    }
  }
}

}  // namespace

FoxWrightParams::FoxWrightParams(std::vector<ParamPair> upper,
                                 std::vector<ParamPair> lower)
    : upper_(std::move(upper)), lower_(std::move(lower)) {
  if (upper_.empty() && lower_.empty()) {
    throw InputError("params: upper and lower lists must not both be empty");
  }
  validate_pairs(upper_, "upper");
  validate_pairs(lower_, "lower");
}

ConvergenceData convergence_data(const FoxWrightParams& params) {
  double sum_a = 0.0, sum_b = 0.0;
  double log_rho = 0.0;  // sum A ln A - sum B ln B
  double sum_alpha = 0.0, sum_beta = 0.0;
  double min_pole = std::numeric_limits<double>::infinity();
  for (const ParamPair& pp : params.upper()) {
    sum_a += pp.weight;
    log_rho += pp.weight * std::log(pp.weight);
    sum_alpha += pp.shift;
    min_pole = std::min(min_pole, pp.shift / pp.weight);
  }
  for (const ParamPair& pp : params.lower()) {
    sum_b += pp.weight;
    log_rho -= pp.weight * std::log(pp.weight);
    sum_beta += pp.shift;
  }
  ConvergenceData cd;
  cd.delta = sum_b - sum_a;
  cd.rho = std::exp(log_rho);
  cd.nabla = std::exp(-log_rho);
  cd.mu = sum_beta - sum_alpha +
          0.5 * (static_cast<double>(params.p()) -
                 static_cast<double>(params.q()));
  cd.gamma_pole = params.p() == 0
                      ? -std::numeric_limits<double>::infinity()
                      : -min_pole;
  cd.balanced = std::abs(sum_b - sum_a) <=
                1e-12 * std::max(1.0, std::abs(sum_a) + std::abs(sum_b));
  return cd;
}

double psi_moment(const FoxWrightParams& params, int n, int m) {
  if (n < 0 || m < 0) throw InputError("psi_moment: n, m must be nonnegative");
  const double k = static_cast<double>(n) + static_cast<double>(m);
  double acc = 0.0;
  for (const ParamPair& pp : params.upper()) {
    acc += special::log_gamma(pp.shift + k * pp.weight);
  }
  for (const ParamPair& pp : params.lower()) {
    acc -= special::log_gamma(pp.shift + k * pp.weight);
  }
  return std::exp(acc);
}

FoxWrightParams shift_params(const FoxWrightParams& params, int n) {
  if (n < 0) throw InputError("shift_params: n must be nonnegative");
  std::vector<ParamPair> up = params.upper(), lo = params.lower();
  for (ParamPair& pp : up) pp.shift += n * pp.weight;
  for (ParamPair& pp : lo) pp.shift += n * pp.weight;
  return {std::move(up), std::move(lo)};
}

FoxWrightParams prepend_upper(const FoxWrightParams& params, ParamPair pair) {
  std::vector<ParamPair> up;
  up.reserve(params.p() + 1);
  up.push_back(pair);
  up.insert(up.end(), params.upper().begin(), params.upper().end());
  return {std::move(up), params.lower()};
}

FoxWrightParams append_lower(const FoxWrightParams& params, ParamPair pair) {
  std::vector<ParamPair> lo = params.lower();
  lo.push_back(pair);
  return {params.upper(), std::move(lo)};
}

FoxWrightParams with_unit_weights(const FoxWrightParams& params) {
  std::vector<ParamPair> up = params.upper(), lo = params.lower();
  for (ParamPair& pp : up) pp.weight = 1.0;
  for (ParamPair& pp : lo) pp.weight = 1.0;
  return {std::move(up), std::move(lo)};
}

FoxWrightParams with_all_weights(const FoxWrightParams& params,
                                 double weight) {
  std::vector<ParamPair> up = params.upper(), lo = params.lower();
  for (ParamPair& pp : up) pp.weight = weight;
  for (ParamPair& pp : lo) pp.weight = weight;
  return {std::move(up), std::move(lo)};
}

bool all_weights_equal(const FoxWrightParams& params, double* weight) {
  double w = params.p() ? params.upper()[0].weight
                        : params.lower()[0].weight;
  for (const ParamPair& pp : params.upper()) {
    if (std::abs(pp.weight - w) > 1e-12 * w) return false;
  }
  for (const ParamPair& pp : params.lower()) {
    if (std::abs(pp.weight - w) > 1e-12 * w) return false;
  }
  if (weight) *weight = w;
  return true;
}

FoxWrightParams params_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("params: JSON parse failed: ") + e.what());
  }
  auto read_side = [&](const char* key) {
    std::vector<ParamPair> out;
    if (!j.contains(key)) return out;
    if (!j[key].is_array()) {
      throw InputError(std::string("params: \"") + key +
                       "\" must be an array of [shift, weight] pairs");
    }
    for (const auto& item : j[key]) {
      if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
          !item[1].is_number()) {
        throw InputError(std::string("params: \"") + key +
                         "\" entries must be [shift, weight] pairs");
      }
      out.push_back({item[0].get<double>(), item[1].get<double>()});
    }
    return out;
  };
  return {read_side("upper"), read_side("lower")};
}

std::string params_to_json_text(const FoxWrightParams& params) {
  nlohmann::json j;
  j["upper"] = nlohmann::json::array();
  j["lower"] = nlohmann::json::array();
  for (const ParamPair& pp : params.upper()) {
    j["upper"].push_back({pp.shift, pp.weight});
  }
  for (const ParamPair& pp : params.lower()) {
    j["lower"].push_back({pp.shift, pp.weight});
  }
  return j.dump();
}

}  // namespace foxwright
