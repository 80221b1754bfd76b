#pragma once

#include <span>
#include <string>
#include <vector>

namespace foxwright {

// One (shift, weight) pair: an (alpha_i, A_i) or (beta_j, B_j).
// Weights are strictly positive; shifts are strictly positive as well,
// since every implemented result assumes positive parameters.
struct ParamPair {
  double shift;
  double weight;
};

// Full parameter array of a Fox-Wright function: p upper pairs, q lower pairs.
class FoxWrightParams {
 public:
  FoxWrightParams(std::vector<ParamPair> upper, std::vector<ParamPair> lower);

  const std::vector<ParamPair>& upper() const { return upper_; }
  const std::vector<ParamPair>& lower() const { return lower_; }
  std::size_t p() const { return upper_.size(); }
  std::size_t q() const { return lower_.size(); }

 private:
  std::vector<ParamPair> upper_;
  std::vector<ParamPair> lower_;
};

// Scalars governing convergence and the validity of the integral
// representations.
//   delta      = sum B_j - sum A_i
//   nabla      = prod A_i^{-A_i} * prod B_j^{B_j}   (series radius at delta == -1)
//   rho        = prod A_i^{A_i} * prod B_j^{-B_j}   (support endpoint, = 1/nabla)
//   mu         = sum beta_j - sum alpha_i + (p - q)/2
//   gamma_pole = -min_i(alpha_i / A_i), rightmost pole of the Mellin integrand
//                (-inf when p == 0)
struct ConvergenceData {
  double delta;
  double nabla;
  double rho;
  double mu;
  double gamma_pole;
  bool balanced;
};

ConvergenceData convergence_data(const FoxWrightParams& params);

// psi_{n,m} = prod Gamma(alpha_i + (n+m) A_i) / prod Gamma(beta_j + (n+m) B_j).
double psi_moment(const FoxWrightParams& params, int n, int m);

// Every shift replaced by shift + n * weight. Realizes the n-th derivative of
// z -> series(-z) up to the sign (-1)^n.
FoxWrightParams shift_params(const FoxWrightParams& params, int n);

// Helpers used by the Stieltjes / lambda-transform / bounds surfaces.
FoxWrightParams prepend_upper(const FoxWrightParams& params, ParamPair pair);
FoxWrightParams append_lower(const FoxWrightParams& params, ParamPair pair);
FoxWrightParams with_unit_weights(const FoxWrightParams& params);
FoxWrightParams with_all_weights(const FoxWrightParams& params, double weight);
bool all_weights_equal(const FoxWrightParams& params, double* weight = nullptr);

// JSON wire format: {"upper": [[shift, weight], ...], "lower": [[...], ...]}.
FoxWrightParams params_from_json_text(const std::string& text);
std::string params_to_json_text(const FoxWrightParams& params);

}  // namespace foxwright
