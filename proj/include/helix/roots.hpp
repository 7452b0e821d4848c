#pragma once

#include "helix/types.hpp"

namespace helix {

// One zero of E_rho in the upper half-plane strip
// (2k-1) pi < Re z < 2k pi, k >= 1.
struct StripRoot {
  long k;
  Complex w;             // closed-form approximation w_k
  Complex z;             // refined zero
  double rouche_radius;  // 2 |E(w_k)| / |E'(w_k)|
  double error_bound;    // 2 sqrt(5) rho arcsinh(k pi rho) / sqrt((k pi rho)^2 + 1)
  bool certified;        // error_bound valid (rho < 2 sqrt(5) / 55) and met
};

// w_k = 2 pi k + 2 i arcsinh(k pi rho).
Complex approx_root(const Pitch& rho, long k);

// E_rho and E_rho' at w_k in closed form (no trigonometric evaluation):
//   E(w_k)  = 4 k pi rho^2 (-A^2/(k pi) + 2 i A),
//   E'(w_k) = 4 k pi rho  (rho + i (rho A/(k pi) + S)),
// with A = arcsinh(k pi rho), S = sqrt((k pi rho)^2 + 1).
Complex e_rho_at_approx(const Pitch& rho, long k);
Complex e_rho_prime_at_approx(const Pitch& rho, long k);

double rouche_radius(const Pitch& rho, long k);
double root_error_bound(const Pitch& rho, long k);

// Damped Newton refinement started at w_k; steps are capped at the Rouche
// radius. Stops when |E(z)| <= tol' |E'(z)| with tol' = max(tol, eps |z|),
// the representability floor of the iterate; throws ConvergenceError when
// the iteration budget runs out.
StripRoot refine_root(const Pitch& rho, long k, double tol = 1e-12,
                      int max_iter = 100);

// Independent root location through the zero set of Im E: on strip k the
// curve y = Gamma(x) solving the imaginary part is explicit, and the real
// part restricted to it changes sign exactly once; bisection on that
// residual yields the root without derivatives.
Complex curve_oracle(const Pitch& rho, long k);

namespace detail {
// refine_root variant returning E'(z) from the last Newton evaluation,
// avoiding one trigonometric evaluation in the series hot loop.
StripRoot refine_root_full(const Pitch& rho, long k, double tol, int max_iter,
                           Complex* e_prime_at_z);
}  // namespace detail

struct ZeroCount {
  long count;      // nearest integer to the argument-principle integral
  double deviation;  // distance of the integral from that integer (< 0.25)
};

// Number of zeros of E_rho inside the axis-aligned rectangle
// [x0, x1] x [y0, y1] by the argument principle. Throws
// IndeterminateCountError if the integral is not within 0.25 of an integer.
ZeroCount count_zeros_region(const Pitch& rho, double x0, double x1, double y0,
                             double y1, double tol = 5e-3);

// Zero count for strip k: rectangle [(2k-1) pi + d, 2k pi - d] x [d, height]
// with inset d = 1e-6; height defaults to 2 arcsinh(k pi rho) + 2.
ZeroCount count_zeros_rectangle(const Pitch& rho, long k, double height = 0.0);

}  // namespace helix
