#include "helix/roots.hpp"

#include <cmath>

#include "helix/adaptive.hpp"
#include "helix/kernel.hpp"
#include "helix/special_functions.hpp"

namespace helix {
namespace {

const double kPi = std::acos(-1.0);

void check_k(long k, const char* who) {
  if (k < 1) throw DomainError(std::string(who) + ": index k must be >= 1");
}

}  // namespace

Complex approx_root(const Pitch& rho, long k) {
  check_k(k, "approx_root");
  double u = static_cast<double>(k) * kPi * rho.value();
  return {2.0 * kPi * static_cast<double>(k), 2.0 * std::asinh(u)};
}

Complex e_rho_at_approx(const Pitch& rho, long k) {
  check_k(k, "e_rho_at_approx");
  double r = rho.value();
  double kp = static_cast<double>(k) * kPi;
  double A = std::asinh(kp * r);
  return 4.0 * kp * r * r * Complex(-A * A / kp, 2.0 * A);
}

Complex e_rho_prime_at_approx(const Pitch& rho, long k) {
  check_k(k, "e_rho_prime_at_approx");
  double r = rho.value();
  double kp = static_cast<double>(k) * kPi;
  double u = kp * r;
  double A = std::asinh(u);
  double S = std::sqrt(u * u + 1.0);
  return 4.0 * kp * r * Complex(r, r * A / kp + S);
}

double rouche_radius(const Pitch& rho, long k) {
  return 2.0 * std::abs(e_rho_at_approx(rho, k)) /
         std::abs(e_rho_prime_at_approx(rho, k));
}

double root_error_bound(const Pitch& rho, long k) {
  check_k(k, "root_error_bound");
  double u = static_cast<double>(k) * kPi * rho.value();
  return 2.0 * std::sqrt(5.0) * rho.value() * std::asinh(u) /
         std::sqrt(u * u + 1.0);
}

StripRoot refine_root(const Pitch& rho, long k, double tol, int max_iter) {
  return detail::refine_root_full(rho, k, tol, max_iter, nullptr);
}

StripRoot detail::refine_root_full(const Pitch& rho, long k, double tol,
                                   int max_iter, Complex* e_prime_at_z) {
  check_k(k, "refine_root");
  if (!(tol > 0.0)) throw DomainError("refine_root: tolerance must be > 0");
  Complex w = approx_root(rho, k);
  double cap = rouche_radius(rho, k);
  Complex z = w;
  ErhoPair e = e_rho_with_prime(rho, z);
  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    double ep = std::abs(e.derivative);
    if (ep == 0.0) {
      throw ConvergenceError("refine_root: vanishing derivative");
    }
    // The iterate cannot be placed closer to the zero than a few ulps of
    // |z|, so the residual cannot drop below that multiple of |E'|; widen
    // the stopping rule accordingly or the iteration stagnates for far-out
    // strips.
    double tol_floor = 4.0 * 2.220446049250313e-16 * (1.0 + std::abs(z));
    if (std::abs(e.value) <= std::max(tol, tol_floor) * ep) {
      converged = true;
      break;
    }
    Complex step = -e.value / e.derivative;
    double len = std::abs(step);
    if (len > cap) step *= cap / len;  // trust region: stay near w_k
    // Damp until the residual decreases.
    Complex znew = z + step;
    ErhoPair enew = e_rho_with_prime(rho, znew);
    int halvings = 0;
    while (std::abs(enew.value) > std::abs(e.value) && halvings < 30) {
      step *= 0.5;
      znew = z + step;
      enew = e_rho_with_prime(rho, znew);
      ++halvings;
    }
    if (halvings == 30) {
      throw ConvergenceError("refine_root: damping failed to reduce residual");
    }
    z = znew;
    e = enew;
  }
  if (!converged) {
    throw ConvergenceError("refine_root: iteration budget exhausted");
  }
  double lo = (2.0 * static_cast<double>(k) - 1.0) * kPi;
  double hi = 2.0 * static_cast<double>(k) * kPi;
  if (!(z.real() > lo && z.real() < hi && z.imag() > 0.0)) {
    throw ConvergenceError("refine_root: iterate left the strip");
  }
  double bound = root_error_bound(rho, k);
  bool small_pitch = rho.value() < 2.0 * std::sqrt(5.0) / 55.0;
  bool certified = small_pitch && std::abs(z - w) <= bound;
  if (e_prime_at_z != nullptr) *e_prime_at_z = e.derivative;
  return {k, w, z, cap, bound, certified};
}

Complex curve_oracle(const Pitch& rho, long k) {
  check_k(k, "curve_oracle");
  double r = rho.value();
  // In the half-scale variable zeta = z/2 the equation E(z) = 0 factors as
  // sin(zeta) = s i rho zeta with s = +1 for even k and -1 for odd k on
  // strip k. Writing zeta = x + i y, the imaginary part pins
  // y = arcsinh(s rho x sec x) =: G(x) and the real part leaves the scalar
  // residual phi(x) = sin(x) cosh(G(x)) + s rho G(x), which changes sign
  // exactly once between the half-integer pole and k pi.
  double s = (k % 2 == 0) ? 1.0 : -1.0;
  auto gamma_y = [&](double x) { return std::asinh(s * r * x / std::cos(x)); };
  auto phi = [&](double x) {
    double y = gamma_y(x);
    return std::sin(x) * std::cosh(y) + s * r * y;
  };
  double a = (static_cast<double>(k) - 0.5) * kPi;
  double b = static_cast<double>(k) * kPi;
  double fb = phi(b);
  double eps = 1e-3 * (b - a);
  while ((phi(a + eps) > 0.0) == (fb > 0.0)) {
    eps *= 0.5;
    if (eps < 1e-300) {
      throw ConvergenceError("curve_oracle: no sign change found");
    }
  }
  double x = detail::bisect(phi, a + eps, b);
  return 2.0 * Complex(x, gamma_y(x));
}

ZeroCount count_zeros_region(const Pitch& rho, double x0, double x1, double y0,
                             double y1, double tol) {
  if (!(x1 > x0) || !(y1 > y0)) {
    throw DomainError("count_zeros_region: empty rectangle");
  }
  auto logd = [&](Complex z) -> Complex {
    Complex e = e_rho(rho, z);
    double scale = rho.value() * rho.value() * std::norm(z) + 1.0;
    if (std::abs(e) < 1e-12 * scale) {
      throw IndeterminateCountError(
          "count_zeros_region: contour passes too close to a zero");
    }
    return e_rho_prime(rho, z) / e;
  };
  AdaptiveOptions opt;
  opt.abs_tol = tol;
  opt.max_panel_width = 1.0;
  KahanSumComplex total;
  // Rectangle boundary, counterclockwise.
  total.add(integrate_adaptive<Complex>(
                [&](double x) { return logd(Complex(x, y0)); }, x0, x1, opt)
                .value);
  total.add(integrate_adaptive<Complex>(
                [&](double y) { return logd(Complex(x1, y)) * Complex(0, 1); },
                y0, y1, opt)
                .value);
  total.add(-integrate_adaptive<Complex>(
                 [&](double x) { return logd(Complex(x, y1)); }, x0, x1, opt)
                 .value);
  total.add(-integrate_adaptive<Complex>(
                 [&](double y) { return logd(Complex(x0, y)) * Complex(0, 1); },
                 y0, y1, opt)
                 .value);
  Complex winding = total.result() / Complex(0.0, 2.0 * kPi);
  double n = std::round(winding.real());
  double dev = std::abs(winding - Complex(n, 0.0));
  if (!(dev < 0.25)) {
    throw IndeterminateCountError(
        "count_zeros_region: integral not close to an integer");
  }
  return {static_cast<long>(n), dev};
}

ZeroCount count_zeros_rectangle(const Pitch& rho, long k, double height) {
  check_k(k, "count_zeros_rectangle");
  double d = 1e-6;
  if (height <= 0.0) {
    height =
        2.0 * std::asinh(static_cast<double>(k) * kPi * rho.value()) + 2.0;
  }
  double x0 = (2.0 * static_cast<double>(k) - 1.0) * kPi + d;
  double x1 = 2.0 * static_cast<double>(k) * kPi - d;
  return count_zeros_region(rho, x0, x1, d, height);
}

}  // namespace helix
