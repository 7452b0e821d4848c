#pragma once

#include "helix/roots.hpp"
#include "helix/types.hpp"

namespace helix {

// Contribution of strip k to the residue expansion: 1/E_rho'(z) at the
// refined root (residue of 1/E_rho there).
Complex residue_term(const Pitch& rho, const StripRoot& root);

// Same quantity evaluated at the closed-form approximation w_k.
Complex approx_term(const Pitch& rho, long k);

// Smallest cutoff K whose certified remainder of
//   4 pi (rho^2+1) sum_{k>K} |Im 1/E'(.)|
// is below tol/2, for the refined-root series and the approximate series
// respectively. The refined plan additionally requires the perturbation
// certificate eta(k) <= 1/2 for every discarded k. Cutoffs are capped at
// 1e7: with strict = true an unreachable tolerance throws ToleranceError,
// otherwise the plan reports the honest (larger) remainder bound at the cap.
SeriesTruncation plan_residue_truncation(const Pitch& rho, double tol,
                                         bool strict = true);
SeriesTruncation plan_approx_truncation(const Pitch& rho, double tol,
                                        bool strict = true);

// I(rho) = -4 pi (rho^2+1) sum_{k>=1} Im 1/E'(z_k), summed to a certified
// cutoff. Roots are Newton-refined (curve oracle as fallback); terms are
// accumulated in fixed chunks so the value does not depend on thread count.
EnergyEstimate residue_sum(const Pitch& rho, double tol = 1e-8,
                           bool strict = true);

// Same series over the closed-form points w_k (no refinement).
EnergyEstimate approx_sum(const Pitch& rho, double tol = 1e-8,
                          bool strict = true);

// Perturbation certificate: upper bound on the relative difference
// |E'(z_k) - E'(w_k)| / |E'(w_k)|, decreasing in k. Valid (certificate
// holds) only when the returned value is < 1.
double eta_bound(const Pitch& rho, long k);

long series_cutoff_cap();

}  // namespace helix
