#include "helix/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "helix/adaptive.hpp"
#include "helix/kernel.hpp"

namespace helix {
namespace {

const double kPi = std::acos(-1.0);

double check_tol(double tol, const char* who) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw DomainError(std::string(who) + ": tolerance must be positive");
  }
  return tol;
}

// Round T up to a whole number of pi-panels.
double pi_aligned(double t) { return std::ceil(t / kPi) * kPi; }

}  // namespace

EnergyEstimate integrate_density(const Pitch& rho, double tol) {
  check_tol(tol, "integrate_density");
  double r = rho.value();
  // Beyond T the density is 1/(rho^2 t^2) plus an oscillatory part; adding
  // the exact integral of the former leaves per-side mass below
  //   (4 (rho^2+1) / (3 rho^4)) / T^3.
  double c = 4.0 * (r * r + 1.0) / (3.0 * std::pow(r, 4));
  double T = pi_aligned(std::max(4.0 * kPi, std::cbrt(4.0 * c / tol)));
  double tail_rem = 2.0 * c / (T * T * T);
  AdaptiveOptions opt;
  opt.abs_tol = 0.25 * tol;
  auto q = integrate_adaptive<double>(
      [&](double t) { return m_rho_real(rho, t); }, 0.0, T, opt);
  double value = 2.0 * (q.value + 1.0 / (r * r * T));
  double achieved = 2.0 * q.error_bound + tail_rem;
  return {rho, value, Method::quadrature, tail_rem, std::max(tol, achieved)};
}

double sinc_deficit_integral(double tol) {
  check_tol(tol, "sinc_deficit_integral");
  // (1 - sinc^2 t)/t^2 = 1/t^2 - 1/t^4 + cos(2t)/(2 t^4); the first two
  // terms integrate to 1/T - 1/(6 T^3) per side and two integrations by
  // parts bound the oscillatory remainder by 1/(2 T^4) per side.
  double T = pi_aligned(std::max(4.0 * kPi, std::pow(2.0 / tol, 0.25)));
  AdaptiveOptions opt;
  opt.abs_tol = 0.25 * tol;
  auto q =
      integrate_adaptive<double>([](double t) { return sinc_deficit(t); }, 0.0,
                                 T, opt);
  return 2.0 * (q.value + 1.0 / T - 1.0 / (6.0 * T * T * T));
}

double didrho(const Pitch& rho, double tol) {
  check_tol(tol, "didrho");
  double r = rho.value();
  // For t >= T the integrand is -1/(rho^3 t^2) up to terms bounded by
  // (1/rho^3 + (2 rho^2 + 1)/rho^7) / t^4; attach the exact leading tail.
  double c = (1.0 / std::pow(r, 3) + (2.0 * r * r + 1.0) / std::pow(r, 7)) /
             3.0;
  double T = pi_aligned(std::max(4.0 * kPi, std::cbrt(4.0 * c / tol)));
  AdaptiveOptions opt;
  opt.abs_tol = 0.25 * tol;
  auto q = integrate_adaptive<double>(
      [&](double t) {
        double d = r * r + sinc_sq(t);
        return -r * sinc_deficit(t) / (d * d);
      },
      0.0, T, opt);
  return 2.0 * q.value - 2.0 / (std::pow(r, 3) * T);
}

}  // namespace helix
