#include "helix/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "helix/parallel.hpp"
#include "helix/quadrature.hpp"
#include "helix/residue_series.hpp"

namespace helix {
namespace {

const double kPi = std::acos(-1.0);
constexpr long kSummandCap = 1000000000;

// integral_K^inf dt / (t sqrt((pi rho t)^2 + 1)), cancellation-free.
double g_tail_integral(double rho, double t) {
  double x = kPi * rho * t;
  double S = std::hypot(x, 1.0);
  return std::log1p((1.0 + 1.0 / (S + x)) / x);
}

// integral_K^inf 2 rho dt / (t ((pi rho t)^2 + 1)).
double h_tail_integral(double rho, double t) {
  double x = kPi * rho * t;
  return rho * std::log1p(1.0 / (x * x));
}

void check_tol(double tol, const char* who) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw DomainError(std::string(who) + ": tolerance must be positive");
  }
}

// Smallest K with f(K) <= bound (f decreasing), by doubling + bisection.
template <class F>
long smallest_cutoff(F f, double bound, const char* who) {
  long lo = 1;
  if (f(lo) <= bound) return lo;
  long hi = lo;
  while (hi < kSummandCap && f(hi) > bound) hi = std::min(kSummandCap, 2 * hi);
  if (f(hi) > bound) {
    throw ToleranceError(std::string(who) + ": summand cap reached");
  }
  while (lo + 1 < hi) {
    long mid = lo + (hi - lo) / 2;
    (f(mid) > bound ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

double g_series(const Pitch& rho, double tol) {
  check_tol(tol, "g_series");
  double r = rho.value();
  // Midpoint-of-integral-brackets tail estimate: the correction error is at
  // most half the first omitted-vs-kept integral gap, i.e. f(K)/2.
  auto half_term = [&](long k) {
    double u = kPi * r * static_cast<double>(k);
    return 0.5 / (static_cast<double>(k) * std::hypot(u, 1.0));
  };
  long K = smallest_cutoff(half_term, tol, "g_series");
  double partial = parallel_sum_indexed(1, K + 1, [&](long k) {
    double u = kPi * r * static_cast<double>(k);
    return 1.0 / (static_cast<double>(k) * std::hypot(u, 1.0));
  });
  double tail = 0.5 * (g_tail_integral(r, static_cast<double>(K)) +
                       g_tail_integral(r, static_cast<double>(K) + 1.0));
  return partial + tail;
}

Bracket g_bracket(const Pitch& rho) {
  double r = rho.value();
  if (r > 1.0) throw DomainError("g_bracket: requires rho <= 1");
  double u = kPi * r;
  double S1 = std::hypot(u, 1.0);
  double lo = std::log((1.0 + S1) / kPi);
  return {lo, lo + 1.0 / S1};
}

double h_series(const Pitch& rho, double tol) {
  check_tol(tol, "h_series");
  double r = rho.value();
  auto half_term = [&](long k) {
    double u = kPi * r * static_cast<double>(k);
    return r / (static_cast<double>(k) * (u * u + 1.0));
  };
  long K = smallest_cutoff(half_term, tol, "h_series");
  double partial = parallel_sum_indexed(1, K + 1, [&](long k) {
    double u = kPi * r * static_cast<double>(k);
    return 2.0 * r / (static_cast<double>(k) * (u * u + 1.0));
  });
  double tail = 0.5 * (h_tail_integral(r, static_cast<double>(K)) +
                       h_tail_integral(r, static_cast<double>(K) + 1.0));
  return partial + tail;
}

double h_bound(const Pitch& rho) {
  double r = rho.value();
  if (r >= 1.0 / kPi) throw DomainError("h_bound: requires rho < 1/pi");
  double u = kPi * r;
  return 2.0 * r * (1.0 + std::log(1.0 / u) + 0.5 * std::log1p(u * u));
}

Complex dk_value(const Pitch& rho, long k) {
  if (k < 1) throw DomainError("dk_value: index k must be >= 1");
  double r = rho.value();
  double kp = static_cast<double>(k) * kPi;
  double u = kp * r;
  double A = std::asinh(u);
  return {r * A / kp + std::hypot(u, 1.0), -r};
}

TransferCheck transfer_check(std::span<const Complex> terms) {
  if (terms.empty()) throw DomainError("transfer_check: no terms given");
  bool all_pos = true;
  bool all_neg = true;
  double c_min = 1.0;
  for (Complex t : terms) {
    double a = std::abs(t);
    if (a == 0.0) return {false, 0.0};
    all_pos = all_pos && t.imag() > 0.0;
    all_neg = all_neg && t.imag() < 0.0;
    c_min = std::min(c_min, std::fabs(t.imag()) / a);
  }
  return {all_pos || all_neg, c_min};
}

double transfer_constant() { return kPi / std::sqrt(kPi * kPi + 1.0); }

AsymptoticReport asymptotic_report(std::span<const double> grid, double tol) {
  check_tol(tol, "asymptotic_report");
  AsymptoticReport report;
  report.tolerance = tol;
  report.rows.reserve(grid.size());
  for (double r : grid) {
    Pitch p(r);
    SweepRow row;
    row.rho = r;
    row.i_res = residue_sum(p, tol, /*strict=*/false).value;
    row.i_tilde = approx_sum(p, tol, /*strict=*/false).value;
    if (r >= 1e-3) {
      row.i_quad = integrate_density(p, tol).value;
      row.ratio_large = *row.i_quad * 3.0 * r * r / kPi;
    }
    row.ref_small = std::log(1.0 / r) / r;
    row.ref_large_lo = kPi / (3.0 * (1.0 + r * r));
    row.ref_large_hi = kPi / (3.0 * r * r);
    if (r < 1.0) row.ratio_small = row.i_res * r / std::log(1.0 / r);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace helix
