#include "foxwright/series.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "foxwright/errors.hpp"
#include "foxwright/special.hpp"

namespace foxwright {

namespace {

constexpr long kMaxTerms = 1'000'000;
constexpr double kDeltaTol = 1e-12;

void check_convergence(const ConvergenceData& cd, double abs_z) {
  if (cd.delta < -1.0 - kDeltaTol) {
    throw DivergenceError("eval_series: delta < -1, series diverges");
  }
  if (std::abs(cd.delta + 1.0) <= kDeltaTol &&
      !(abs_z < cd.nabla * (1.0 - 1e-12))) {
    throw DivergenceError(
        "eval_series: delta == -1 requires |z| < nabla (boundary rejected)");
  }
}

void check_tol(double tol) {
  if (!(tol > 0.0) || tol > 1e-3) {
    throw InputError("eval_series: tol must lie in (0, 1e-3]");
  }
}

template <typename T>
struct Kahan {
  T sum{};
  T carry{};
  void add(T x) {
    const T y = x - carry;
    const T t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Scalar S is double, long double, or std::complex<double>.
template <typename Real, typename S>
struct SeriesResult {
  S value;
  Real max_abs_term;
};

template <typename Real, typename S>
SeriesResult<Real, S> sum_series(const FoxWrightParams& prm, Real abs_z,
                                 S unit, double tol) {
  const auto& up = prm.upper();
  const auto& lo = prm.lower();
  std::vector<Real> up_lg(up.size()), lo_lg(lo.size());
  Real log_mag = Real(0);
  for (std::size_t i = 0; i < up.size(); ++i) {
    up_lg[i] = special::detail::log_gamma_positive<Real>(Real(up[i].shift));
    log_mag += up_lg[i];
  }
  for (std::size_t j = 0; j < lo.size(); ++j) {
    lo_lg[j] = special::detail::log_gamma_positive<Real>(Real(lo[j].shift));
    log_mag -= lo_lg[j];
  }

  Kahan<S> acc;
  S phase = S(1);
  Real max_term = std::exp(log_mag);
  acc.add(S(max_term));
  if (abs_z == Real(0)) return {acc.sum, max_term};

  const Real log_abs_z = std::log(abs_z);
  const Real noise = Real(4) * std::numeric_limits<Real>::epsilon();
  for (long k = 0; k < kMaxTerms; ++k) {
    Real dlog = log_abs_z - std::log(Real(k + 1));
    for (std::size_t i = 0; i < up.size(); ++i) {
      const Real next = special::detail::log_gamma_positive<Real>(
          Real(up[i].shift) + Real(k + 1) * Real(up[i].weight));
      dlog += next - up_lg[i];
      up_lg[i] = next;
    }
    for (std::size_t j = 0; j < lo.size(); ++j) {
      const Real next = special::detail::log_gamma_positive<Real>(
          Real(lo[j].shift) + Real(k + 1) * Real(lo[j].weight));
      dlog -= next - lo_lg[j];
      lo_lg[j] = next;
    }
    log_mag += dlog;
    phase *= unit;
    const Real mag = std::exp(log_mag);
    acc.add(S(mag) * phase);
    max_term = std::max(max_term, mag);

    const Real ratio = std::exp(dlog);
    Real tail = std::numeric_limits<Real>::infinity();
    if (ratio < Real(0.75) && k >= 2) {
      tail = mag * ratio / (Real(1) - ratio);
    }
    const Real scale =
        std::max(Real(std::abs(acc.sum)), noise * max_term);
    if (mag + tail <= Real(tol) * scale) {
      return {acc.sum, max_term};
    }
  }
  throw NoConvergenceError("eval_series: no convergence within 1e6 terms");
}

}  // namespace

double eval_series(const FoxWrightParams& params, double z, double tol) {
  check_tol(tol);
  check_convergence(convergence_data(params), std::abs(z));
  const double unit = z < 0.0 ? -1.0 : 1.0;
  auto r = sum_series<double, double>(params, std::abs(z), unit, tol);
  // Heavy alternation: redo at 80-bit before giving the cancellation away.
  if (r.max_abs_term > 1e8 * std::max(std::abs(r.value), 1e-300)) {
    auto r2 = sum_series<long double, long double>(
        params, std::abs(static_cast<long double>(z)), z < 0.0 ? -1.0L : 1.0L,
        tol);
    return static_cast<double>(r2.value);
  }
  return r.value;
}

std::complex<double> eval_series(const FoxWrightParams& params,
                                 std::complex<double> z, double tol) {
  check_tol(tol);
  const double az = std::abs(z);
  check_convergence(convergence_data(params), az);
  const std::complex<double> unit = az == 0.0 ? 0.0 : z / az;
  auto r = sum_series<double, std::complex<double>>(params, az, unit, tol);
  return r.value;
}

double eval_pfq(std::span<const double> upper_shifts,
                std::span<const double> lower_shifts, double z, double tol) {
  std::vector<ParamPair> up, lo;
  up.reserve(upper_shifts.size());
  lo.reserve(lower_shifts.size());
  for (double a : upper_shifts) up.push_back({a, 1.0});
  for (double b : lower_shifts) lo.push_back({b, 1.0});
  FoxWrightParams params(std::move(up), std::move(lo));
  const double prefactor =
      special::gamma_ratio(lower_shifts, upper_shifts);
  return prefactor * eval_series(params, z, tol);
}

double series_term(const FoxWrightParams& params, long k, double z) {
  if (k < 0) throw InputError("series_term: k must be nonnegative");
  if (z == 0.0) return k == 0 ? psi_moment(params, 0, 0) : 0.0;
  double acc = -special::log_gamma(static_cast<double>(k) + 1.0);
  for (const ParamPair& pp : params.upper()) {
    acc += special::log_gamma(pp.shift + k * pp.weight);
  }
  for (const ParamPair& pp : params.lower()) {
    acc -= special::log_gamma(pp.shift + k * pp.weight);
  }
  acc += k * std::log(std::abs(z));
  const double sign = (z < 0.0 && (k & 1)) ? -1.0 : 1.0;
  return sign * std::exp(acc);
}

TermRecurrence::TermRecurrence(const FoxWrightParams& params,
                               std::complex<double> z)
    : params_(params),
      log_abs_z_(std::log(std::abs(z))),
      upper_lg_(params.p()),
      lower_lg_(params.q()) {
  const double az = std::abs(z);
  unit_ = az == 0.0 ? 0.0 : z / az;
  log_mag_ = 0.0;
  for (std::size_t i = 0; i < params.p(); ++i) {
    upper_lg_[i] = special::log_gamma(params.upper()[i].shift);
    log_mag_ += upper_lg_[i];
  }
  for (std::size_t j = 0; j < params.q(); ++j) {
    lower_lg_[j] = special::log_gamma(params.lower()[j].shift);
    log_mag_ -= lower_lg_[j];
  }
}

void TermRecurrence::advance() {
  double dlog = log_abs_z_ - std::log(static_cast<double>(k_ + 1));
  for (std::size_t i = 0; i < params_.p(); ++i) {
    const ParamPair& pp = params_.upper()[i];
    const double next = special::log_gamma(pp.shift + (k_ + 1) * pp.weight);
    dlog += next - upper_lg_[i];
    upper_lg_[i] = next;
  }
  for (std::size_t j = 0; j < params_.q(); ++j) {
    const ParamPair& pp = params_.lower()[j];
    const double next = special::log_gamma(pp.shift + (k_ + 1) * pp.weight);
    dlog -= next - lower_lg_[j];
    lower_lg_[j] = next;
  }
  log_mag_ += dlog;
  phase_ *= unit_;
  last_ratio_ = std::exp(dlog);
  ++k_;
}

std::complex<double> TermRecurrence::term() const {
  return std::exp(log_mag_) * phase_;
}

}  // namespace foxwright
