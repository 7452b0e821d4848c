#pragma once

#include <optional>
#include <span>
#include <vector>

#include "helix/types.hpp"

namespace helix {

// G(rho) = sum_{k>=1} 1/(k sqrt((k pi rho)^2 + 1)), summed until the
// integral-midpoint tail correction certifies |error| <= tol.
double g_series(const Pitch& rho, double tol = 1e-10);

// Lower and upper bounds for G(rho) - log(1/rho) valid for every rho in
// (0, 1):  lo = log((1 + sqrt((pi rho)^2 + 1)) / pi),  hi = lo + 1/S_1.
struct Bracket {
  double lo;
  double hi;
};
Bracket g_bracket(const Pitch& rho);

// H(rho) = sum_{k>=1} 2 rho / (k ((k pi rho)^2 + 1)).
double h_series(const Pitch& rho, double tol = 1e-10);

// Closed-form upper bound for H on rho < 1:
//   2 rho (1 + log(1/(pi rho)) + (1/2) log(1 + (pi rho)^2)).
double h_bound(const Pitch& rho);

// D_k = rho A/(k pi) + S - i rho, the bracket in
// E'(w_k) = 4 k pi rho i D_k; Im 1/E'(w_k) = -Re(1/D_k) / (4 k pi rho).
Complex dk_value(const Pitch& rho, long k);

struct TransferCheck {
  bool sign_ok;    // all terms have Im of one strict sign
  double c_min;    // min over terms of |Im term| / |term|
};

// Verifies that every series term satisfies the transfer inequality
// |Im t| >= c |t| and reports the empirical minimal ratio. The reference
// constant is pi / sqrt(pi^2 + 1).
TransferCheck transfer_check(std::span<const Complex> terms);
double transfer_constant();

struct SweepRow {
  double rho;
  std::optional<double> i_quad;  // absent below rho = 1e-3
  double i_res;
  double i_tilde;
  double ref_small;                   // log(1/rho)/rho
  double ref_large_lo, ref_large_hi;  // sandwich band around pi/(3 rho^2)
  std::optional<double> ratio_small;  // i_res * rho / log(1/rho), rho < 1
  std::optional<double> ratio_large;  // i_quad * 3 rho^2 / pi
};

struct AsymptoticReport {
  std::vector<SweepRow> rows;
  double tolerance;
};

// Evaluates the three methods over a pitch grid together with the
// small-pitch and large-pitch reference laws. Series cutoffs run in
// non-strict (capped) mode so extreme pitches report honest tail bounds.
AsymptoticReport asymptotic_report(std::span<const double> grid,
                                   double tol = 1e-6);

}  // namespace helix
