#include "helix/kernel.hpp"

#include <cmath>

namespace helix {
namespace {

constexpr double kSeriesCrossover = 1e-2;
constexpr double kImGuard = 700.0;

// Even Taylor coefficients of M_rho around 0 in powers of t^2, derived from
// 4 sin^2(t/2) = t^2 (1 - c1 t^2 + c2 t^4 + c3 t^6 + c4 t^8 + ...) with
// c1 = 1/12, c2 = 1/360, c3 = 1/20160, c4 = 1/1814400 and geometric
// re-expansion of the reciprocal; a = 1/(rho^2 + 1).
struct MSeries {
  double m0, m2, m4, m6;
};

MSeries m_series(double rho) {
  double a = 1.0 / (rho * rho + 1.0);
  double a2 = a * a;
  double a3 = a2 * a;
  double a4 = a2 * a2;
  MSeries s;
  s.m0 = a / 12.0;
  s.m2 = a2 / 144.0 - a / 360.0;
  s.m4 = a / 20160.0 - a2 / 2160.0 + a3 / 1728.0;
  s.m6 = -a / 1814400.0 + a2 * (1.0 / 129600.0 + 1.0 / 120960.0) -
         a3 / 17280.0 + a4 / 20736.0;
  return s;
}

}  // namespace

double m_rho_real(const Pitch& rho, double t) {
  if (!std::isfinite(t)) throw DomainError("m_rho_real: non-finite argument");
  double r = rho.value();
  double s = std::fabs(t);
  if (s < kSeriesCrossover) {
    MSeries m = m_series(r);
    double t2 = t * t;
    return m.m0 + t2 * (m.m2 + t2 * (m.m4 + t2 * m.m6));
  }
  double sh = std::sin(0.5 * t);
  double den = r * r * t * t + 4.0 * sh * sh;
  return (r * r + 1.0) / den - 1.0 / (t * t);
}

Complex e_rho(const Pitch& rho, Complex z) {
  double r = rho.value();
  if (std::fabs(z.imag()) > kImGuard) {
    throw OverflowGuardError("e_rho: |Im z| beyond exp guard");
  }
  Complex osc;
  if (std::fabs(z.imag()) < 1.0) {
    // Half-angle form keeps full relative accuracy close to the real axis,
    // where 2 - 2 cos z loses digits near the zeros z ~ 2 k pi.
    Complex sh = std::sin(0.5 * z);
    osc = 4.0 * sh * sh;
  } else {
    osc = 2.0 - 2.0 * std::cos(z);
  }
  return r * r * z * z + osc;
}

Complex e_rho_prime(const Pitch& rho, Complex z) {
  double r = rho.value();
  if (std::fabs(z.imag()) > kImGuard) {
    throw OverflowGuardError("e_rho_prime: |Im z| beyond exp guard");
  }
  return 2.0 * r * r * z + 2.0 * std::sin(z);
}

Complex e_rho_double_prime(const Pitch& rho, Complex z) {
  double r = rho.value();
  if (std::fabs(z.imag()) > kImGuard) {
    throw OverflowGuardError("e_rho_double_prime: |Im z| beyond exp guard");
  }
  return 2.0 * r * r + 2.0 * std::cos(z);
}

ErhoPair e_rho_with_prime(const Pitch& rho, Complex z) {
  double r = rho.value();
  if (std::fabs(z.imag()) > kImGuard) {
    throw OverflowGuardError("e_rho_with_prime: |Im z| beyond exp guard");
  }
  // One exponential yields sin(z/2) and cos(z/2); then
  // E = rho^2 z^2 + 4 sin^2(z/2) and E' = 2 rho^2 z + 4 sin(z/2) cos(z/2).
  Complex v = std::exp(Complex(0.0, 0.5) * z);
  Complex iv = 1.0 / v;
  Complex sh = (v - iv) / Complex(0.0, 2.0);
  Complex ch = 0.5 * (v + iv);
  Complex r2 = Complex(r * r, 0.0);
  return {r2 * z * z + 4.0 * sh * sh, 2.0 * r2 * z + 4.0 * sh * ch};
}

Complex m_rho_complex(const Pitch& rho, Complex z) {
  double r = rho.value();
  double az = std::abs(z);
  if (az < kSeriesCrossover) {
    MSeries m = m_series(r);
    Complex z2 = z * z;
    return m.m0 + z2 * (m.m2 + z2 * (m.m4 + z2 * m.m6));
  }
  Complex e = e_rho(rho, z);
  // Scale of the two denominator summands before cancellation.
  double scale =
      r * r * az * az + 4.0 * std::pow(std::cosh(std::min(
                                  std::fabs(z.imag()), kImGuard) * 0.5), 2);
  if (std::abs(e) < 1e-13 * scale) {
    throw PoleProximityError("m_rho_complex: evaluation point at a pole");
  }
  if (std::abs(e) < 1e-6 * scale) {
    // Factored form: the cancellation happens inside at most one factor.
    Complex izr = Complex(0.0, r) * z;
    Complex two_sh = 2.0 * std::sin(0.5 * z);
    e = (two_sh + izr) * (two_sh - izr);
    if (std::abs(e) < 1e-13 * scale) {
      throw PoleProximityError("m_rho_complex: evaluation point at a pole");
    }
  }
  return (r * r + 1.0) / e - 1.0 / (z * z);
}

double sinc_deficit(double t) {
  if (!std::isfinite(t)) {
    throw DomainError("sinc_deficit: non-finite argument");
  }
  double a = std::fabs(t);
  if (a < 0.05) {
    double t2 = t * t;
    return 1.0 / 3.0 +
           t2 * (-2.0 / 45.0 + t2 * (1.0 / 315.0 - t2 * 2.0 / 14175.0));
  }
  double s = std::sin(t) / t;
  return (1.0 - s) * (1.0 + s) / (t * t);
}

double sinc_sq(double t) {
  if (!std::isfinite(t)) throw DomainError("sinc_sq: non-finite argument");
  double a = std::fabs(t);
  if (a < 0.05) {
    double t2 = t * t;
    return 1.0 - t2 * (1.0 / 3.0 - t2 * (2.0 / 45.0 - t2 / 315.0));
  }
  double s = std::sin(t) / t;
  return s * s;
}

}  // namespace helix
