#include "helix/residue_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "helix/kernel.hpp"
#include "helix/parallel.hpp"

namespace helix {
namespace {

const double kPi = std::acos(-1.0);
constexpr long kCutoffCap = 10000000;
constexpr double kRootTol = 1e-12;
constexpr int kNewtonBudget = 20;

// Integral bound on sum_{k>K} 1/(k sqrt((pi rho k)^2 + 1)) =: tail of the
// 1/(k S_k) series; computed cancellation-free for large pi rho K.
double one_over_ks_tail(double rho, double K) {
  double x = kPi * rho * K;
  double S = std::hypot(x, 1.0);
  return std::log1p((1.0 + 1.0 / (S + x)) / x);
}

// Certified remainder of 4 pi (rho^2+1) sum_{k>K} |Im 1/E'| for the
// approximate series (eta = 0) or the refined series (eta(K+1) < 1).
double tail_bound_at(const Pitch& rho, long K, bool refined) {
  double r = rho.value();
  double inflate = 1.0;
  if (refined) {
    double eta = eta_bound(rho, K + 1);
    if (!(eta <= 0.5)) return std::numeric_limits<double>::infinity();
    inflate = 1.0 / (1.0 - eta);
  }
  return (r * r + 1.0) / r * one_over_ks_tail(r, static_cast<double>(K)) *
         inflate;
}

SeriesTruncation plan_truncation(const Pitch& rho, double tol, bool strict,
                                 bool refined, const char* who) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw DomainError(std::string(who) + ": tolerance must be positive");
  }
  double target = 0.5 * tol;
  long lo = 1;
  if (tail_bound_at(rho, lo, refined) <= target) {
    return {lo, tail_bound_at(rho, lo, refined)};
  }
  long hi = lo;
  while (hi < kCutoffCap && tail_bound_at(rho, hi, refined) > target) {
    hi = std::min(kCutoffCap, 2 * hi);
  }
  if (tail_bound_at(rho, hi, refined) > target) {
    double at_cap = tail_bound_at(rho, kCutoffCap, refined);
    if (strict || !std::isfinite(at_cap)) {
      throw ToleranceError(std::string(who) +
                           ": cutoff cap reached before certified tolerance");
    }
    return {kCutoffCap, at_cap};
  }
  while (lo + 1 < hi) {
    long mid = lo + (hi - lo) / 2;
    if (tail_bound_at(rho, mid, refined) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {hi, tail_bound_at(rho, hi, refined)};
}

}  // namespace

long series_cutoff_cap() { return kCutoffCap; }

double eta_bound(const Pitch& rho, long k) {
  if (k < 1) throw DomainError("eta_bound: index k must be >= 1");
  double r = rho.value();
  // With A = arcsinh(k pi rho): on the disk |z - w_k| <= 2 Ebar/Dbar,
  //   |E(w_k)|  <= Ebar = 4 k pi rho^2 A sqrt(rho^2 + 4),
  //   |E'(w_k)| >= Dbar = 4 k pi rho S,
  //   |E''|     <= Mbar = 2 rho^2 + 2 e cosh(2A) <= 2 (rho^2 + 2e) S^2,
  // provided the disk radius is <= 1; all three reduce to the single
  // decreasing bound below, which also dominates the Rouche quotient
  // Mbar * radius / Dbar.
  double kp = static_cast<double>(k) * kPi;
  double q = std::asinh(kp * r) / kp;
  return (r * r + 2.0 * std::exp(1.0)) * std::sqrt(r * r + 4.0) * q;
}

Complex residue_term(const Pitch& rho, const StripRoot& root) {
  Complex ep = e_rho_prime(rho, root.z);
  if (std::abs(ep) == 0.0) {
    throw PoleProximityError("residue_term: vanishing denominator derivative");
  }
  return 1.0 / ep;
}

Complex approx_term(const Pitch& rho, long k) {
  return 1.0 / e_rho_prime_at_approx(rho, k);
}

SeriesTruncation plan_residue_truncation(const Pitch& rho, double tol,
                                         bool strict) {
  return plan_truncation(rho, tol, strict, true, "plan_residue_truncation");
}

SeriesTruncation plan_approx_truncation(const Pitch& rho, double tol,
                                        bool strict) {
  return plan_truncation(rho, tol, strict, false, "plan_approx_truncation");
}

EnergyEstimate residue_sum(const Pitch& rho, double tol, bool strict) {
  SeriesTruncation plan = plan_residue_truncation(rho, tol, strict);
  double partial = parallel_sum_indexed(1, plan.cutoff + 1, [&](long k) {
    Complex ep;
    try {
      detail::refine_root_full(rho, k, kRootTol, kNewtonBudget, &ep);
    } catch (const ConvergenceError&) {
      ep = e_rho_prime(rho, curve_oracle(rho, k));
    }
    return (1.0 / ep).imag();
  });
  double r = rho.value();
  double value = -4.0 * kPi * (r * r + 1.0) * partial;
  return {rho, value, Method::residue_series, plan.tail_bound,
          std::max(tol, plan.tail_bound)};
}

EnergyEstimate approx_sum(const Pitch& rho, double tol, bool strict) {
  SeriesTruncation plan = plan_approx_truncation(rho, tol, strict);
  double partial = parallel_sum_indexed(1, plan.cutoff + 1, [&](long k) {
    return approx_term(rho, k).imag();
  });
  double r = rho.value();
  double value = -4.0 * kPi * (r * r + 1.0) * partial;
  return {rho, value, Method::approx_series, plan.tail_bound,
          std::max(tol, plan.tail_bound)};
}

}  // namespace helix
