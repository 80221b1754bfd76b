#include "foxwright/quadrature.hpp"

#include <array>
#include <cmath>

namespace foxwright {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi,
           long& evals) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double kron = 0.0, gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    double fsum;
    if (i == 7) {
      fsum = f(c);
      ++evals;
    } else {
      fsum = f(c - h * kXgk[i]) + f(c + h * kXgk[i]);
      evals += 2;
    }
    kron += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  return {kron * h, std::abs(kron - gauss) * h};
}

void adapt(const std::function<double(double)>& f, double lo, double hi,
           double abs_tol, double rel_tol, int depth, QuadResult& out) {
  const Panel p = gk15(f, lo, hi, out.evaluations);
  if (p.error <= std::max(abs_tol, rel_tol * std::abs(p.value)) ||
      depth <= 0) {
    out.value += p.value;
    out.abs_error += p.error;
    if (depth <= 0 &&
        p.error > std::max(abs_tol, rel_tol * std::abs(p.value))) {
      out.converged = false;
    }
    return;
  }
  const double mid = 0.5 * (lo + hi);
  adapt(f, lo, mid, 0.5 * abs_tol, rel_tol, depth - 1, out);
  adapt(f, mid, hi, 0.5 * abs_tol, rel_tol, depth - 1, out);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double lo,
                     double hi, double abs_tol, double rel_tol,
                     int max_depth) {
  QuadResult out;
  if (lo == hi) return out;
  adapt(f, lo, hi, abs_tol, rel_tol, max_depth, out);
  return out;
}

}  // namespace foxwright
