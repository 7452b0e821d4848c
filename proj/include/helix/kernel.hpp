#pragma once

#include "helix/types.hpp"

namespace helix {

// Rescaled energy density of the helix with pitch rho:
//   M_rho(t) = (rho^2 + 1) / (rho^2 t^2 + 4 sin^2(t/2)) - 1/t^2,
// extended by continuity to M_rho(0) = 1 / (12 (rho^2 + 1)). Even in t;
// evaluated through an even Taylor expansion for |t| < 1e-2.
double m_rho_real(const Pitch& rho, double t);

// Analytic continuation of M_rho. Poles at the zeros of the denominator are
// reported via PoleProximityError when the evaluation carries no digits.
Complex m_rho_complex(const Pitch& rho, Complex z);

// Denominator E_rho(z) = rho^2 z^2 + 4 sin^2(z/2) and derivatives.
// |Im z| > 700 throws OverflowGuardError.
Complex e_rho(const Pitch& rho, Complex z);
Complex e_rho_prime(const Pitch& rho, Complex z);
Complex e_rho_double_prime(const Pitch& rho, Complex z);

// E_rho and E_rho' sharing one complex exponential (Newton hot path).
struct ErhoPair {
  Complex value;
  Complex derivative;
};
ErhoPair e_rho_with_prime(const Pitch& rho, Complex z);

// (1 - sinc^2 t) / t^2 with sinc t = sin(t)/t, continued to 1/3 at t = 0.
double sinc_deficit(double t);

// sinc^2 t, series-evaluated near 0.
double sinc_sq(double t);

}  // namespace helix
