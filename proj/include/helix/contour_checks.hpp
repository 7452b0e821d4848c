#pragma once

#include "helix/types.hpp"

namespace helix {

// Contours use the square/arc family indexed by k: corner abscissa
// R_k = (2k + 1/2) pi, chosen so vertical sides stay away from every pole.
double contour_abscissa(long k);

// Unregularized density 1/E_rho integrated over the two vertical sides
// Re z = +-R_k, 0 <= Im z <= R_k (upward on the right, downward on the
// left). The pair sums to a real number; |sum| decays like 1/R_k.
double side_integral(const Pitch& rho, long k, double tol = 1e-9);

// Unregularized density integrated over the circular arc |z| = sqrt(2) R_k,
// pi/4 <= arg z <= 3 pi/4; returns the modulus, which decays exponentially.
double arc_integral(const Pitch& rho, long k, double tol = 1e-12);

struct ContourCheck {
  Complex contour_value;   // integral of the full density around the contour
  Complex residue_value;   // 2 pi i * (sum of enclosed residues)
  double discrepancy;      // |contour_value - residue_value|
  long roots_inside;       // 2k: strips 1..k and their mirror images
};

// Residue-theorem consistency for the full regularized density M_rho over
// the closed contour: bottom [-R_k, R_k], both vertical sides, and the arc.
ContourCheck closed_contour_check(const Pitch& rho, long k, double tol = 1e-8);

}  // namespace helix
