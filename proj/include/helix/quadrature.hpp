#pragma once

#include "helix/types.hpp"

namespace helix {

// I(rho) = integral of M_rho over the real line, by even-symmetry adaptive
// quadrature on [0, T] plus the analytic leading tail 2/(rho^2 T); the
// remaining truncation mass is certified below tol/2 by the choice of T.
// The result satisfies |value - I(rho)| <= tolerance and
// tail_bound <= tolerance.
EnergyEstimate integrate_density(const Pitch& rho, double tol = 1e-10);

// Integral of (1 - sinc^2 t)/t^2 over the real line (equals 2 pi / 3),
// with the analytic tail 2 (1/T - 1/(6 T^3)) attached and the remainder
// certified below 1/T^4.
double sinc_deficit_integral(double tol = 1e-10);

// dI/drho = integral over the real line of
//   rho (sinc^2 t - 1) / (t^2 (rho^2 + sinc^2 t)^2),
// with the analytic leading tail -2/(rho^3 T) attached.
double didrho(const Pitch& rho, double tol = 1e-10);

}  // namespace helix
