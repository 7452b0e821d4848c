#pragma once

#include <cmath>
#include <utility>

#include "helix/errors.hpp"

namespace helix {

// Sigma(u) = u / cosh(u). Strictly increasing on [0, beta], strictly
// decreasing on [beta, infinity), maximum value alpha = Sigma(beta).
double sigma_map(double u);
double sigma_map_derivative(double u);

struct AlphaBeta {
  double alpha;
  double beta;
};

// beta is the unique positive root of 1 - u tanh(u) (it lies in [1, 2]);
// alpha = Sigma(beta). Solved by bisection; residuals of both identities are
// verified below tol.
AlphaBeta solve_alpha_beta(double tol = 1e-12);

// Cached result of solve_alpha_beta at default tolerance.
const AlphaBeta& alpha_beta();

enum class SigmaBranch {
  inner,  // [-alpha, alpha] -> [-beta, beta]
  outer,  // (0, alpha] -> [beta, infinity); 0 maps to +infinity
};

// Left inverse of Sigma on the chosen branch. Outside the branch domain a
// DomainError is thrown; in particular the outer branch rejects v < 0
// because Sigma is positive on [beta, infinity).
double sigma_inverse(double v, SigmaBranch branch, double tol = 1e-12);

struct CkConstant {
  int k;
  double value;
};

// The unique root of theta * tan(theta) + 1 in ((k - 1/2) pi, k pi), k >= 1.
// Results are cached per k.
CkConstant solve_ck(int k, double tol = 1e-12);

// arcsinh(u) / u for u != 0. Mathematically in (0, 1); at |u| below roughly
// 4e-8 the value rounds to 1.0 in double precision.
double arcsinh_ratio(double u);

namespace detail {

// Bisection for a sign change of f on [lo, hi]; f(lo) and f(hi) must have
// opposite signs. Runs to floating-point interval exhaustion (or max_iter)
// and returns the midpoint.
template <class F>
double bisect(F&& f, double lo, double hi, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw ConvergenceError("bisect: no sign change on the given bracket");
  }
  for (int i = 0; i < max_iter; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval exhausted in doubles
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail
}  // namespace helix
