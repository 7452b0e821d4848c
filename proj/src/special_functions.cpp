#include "helix/special_functions.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

namespace helix {

double sigma_map(double u) {
  if (!std::isfinite(u)) {
    if (std::isinf(u)) return 0.0;  // u/cosh(u) -> 0 at both infinities
    throw DomainError("sigma_map: argument must not be NaN");
  }
  // u/cosh(u) = 2u e^{-|u|} / (1 + e^{-2|u|}) avoids cosh overflow.
  double a = std::fabs(u);
  double e = std::exp(-a);
  return 2.0 * u * e / (1.0 + e * e);
}

double sigma_map_derivative(double u) {
  if (!std::isfinite(u)) {
    if (std::isinf(u)) return 0.0;
    throw DomainError("sigma_map_derivative: argument must not be NaN");
  }
  // d/du [u sech u] = (1 - u tanh u) sech u.
  double a = std::fabs(u);
  double e = std::exp(-a);
  double sech = 2.0 * e / (1.0 + e * e);
  return (1.0 - u * std::tanh(u)) * sech;
}

AlphaBeta solve_alpha_beta(double tol) {
  // 1 - u tanh u is positive at u = 1 and negative at u = 2.
  auto f = [](double u) { return 1.0 - u * std::tanh(u); };
  double beta = detail::bisect(f, 1.0, 2.0);
  double alpha = sigma_map(beta);
  if (std::fabs(f(beta)) > tol || std::fabs(sigma_map_derivative(beta)) > tol) {
    throw ConvergenceError("solve_alpha_beta: residual above tolerance");
  }
  return {alpha, beta};
}

const AlphaBeta& alpha_beta() {
  static const AlphaBeta ab = solve_alpha_beta();
  return ab;
}

double sigma_inverse(double v, SigmaBranch branch, double tol) {
  const AlphaBeta& ab = alpha_beta();
  if (!std::isfinite(v)) throw DomainError("sigma_inverse: non-finite value");
  auto f = [v](double u) { return sigma_map(u) - v; };
  double u;
  if (branch == SigmaBranch::outer) {
    if (v < 0.0) {
      throw DomainError(
          "sigma_inverse: outer branch takes values in (0, alpha]");
    }
    if (v > ab.alpha) {
      throw DomainError("sigma_inverse: value above the maximum alpha");
    }
    if (v == 0.0) return std::numeric_limits<double>::infinity();
    if (v == ab.alpha) return ab.beta;
    // Sigma decreases from alpha at beta toward 0; -2 log(v/2) over-shoots
    // the crossing because Sigma(u) < 2u e^{-u} < e^{-u/2} for large u.
    double hi = std::max(ab.beta + 1.0, -2.0 * std::log(v / 2.0));
    while (sigma_map(hi) > v) hi *= 2.0;
    u = detail::bisect(f, ab.beta, hi);
  } else {
    if (std::fabs(v) > ab.alpha) {
      throw DomainError("sigma_inverse: value outside [-alpha, alpha]");
    }
    if (v == 0.0) return 0.0;
    double s = v > 0.0 ? 1.0 : -1.0;
    u = s * detail::bisect([&](double x) { return sigma_map(x) - s * v; }, 0.0,
                           ab.beta);
  }
  if (std::fabs(sigma_map(u) - v) > 10.0 * tol) {
    throw ConvergenceError("sigma_inverse: residual above tolerance");
  }
  return u;
}

CkConstant solve_ck(int k, double tol) {
  if (k < 1 || k > 1000000) {
    throw DomainError("solve_ck: index must be in [1, 1000000]");
  }
  static std::mutex mu;
  static std::vector<double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<size_t>(k) <= cache.size() && cache[k - 1] != 0.0) {
      return {k, cache[k - 1]};
    }
  }
  const double pi = std::acos(-1.0);
  // theta tan(theta) + 1 = 0 rewritten pole-free as theta sin + cos = 0.
  auto f = [](double t) { return t * std::sin(t) + std::cos(t); };
  double lo = (k - 0.5) * pi;
  double hi = k * pi;
  // Step off the tangent pole at the left endpoint until the sign differs
  // from the right endpoint.
  double fhi = f(hi);
  double eps = 1e-9;
  while (lo + eps < hi && (f(lo + eps) > 0.0) == (fhi > 0.0)) eps *= 0.5;
  double c = detail::bisect(f, lo + eps, hi);
  if (std::fabs(std::cos(c)) > 1e-3 &&
      std::fabs(c * std::tan(c) + 1.0) > tol * (1.0 + c * c)) {
    throw ConvergenceError("solve_ck: residual above tolerance");
  }
  {
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<size_t>(k) > cache.size()) cache.resize(k, 0.0);
    cache[k - 1] = c;
  }
  return {k, c};
}

double arcsinh_ratio(double u) {
  if (u == 0.0 || !std::isfinite(u)) {
    throw DomainError("arcsinh_ratio: argument must be finite and nonzero");
  }
  return std::asinh(u) / u;
}

}  // namespace helix
