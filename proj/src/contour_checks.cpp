#include "helix/contour_checks.hpp"

#include <cmath>

#include "helix/adaptive.hpp"
#include "helix/kernel.hpp"
#include "helix/residue_series.hpp"
#include "helix/roots.hpp"

namespace helix {
namespace {

const double kPi = std::acos(-1.0);

void check_k(long k, const char* who) {
  if (k < 1) throw DomainError(std::string(who) + ": index k must be >= 1");
}

Complex unregularized(const Pitch& rho, Complex z) {
  Complex e = e_rho(rho, z);
  double r = rho.value();
  double scale = r * r * std::norm(z) + 1.0;
  if (std::abs(e) < 1e-12 * scale) {
    throw PoleProximityError("contour passes too close to a pole");
  }
  return 1.0 / e;
}

// Vertical sides Re z = +-R, 0 <= Im z <= R of the standard contour,
// oriented counterclockwise (up on the right, down on the left).
Complex side_pair(const Pitch& rho, double R, double tol,
                  Complex (*density)(const Pitch&, Complex)) {
  AdaptiveOptions opt;
  opt.abs_tol = 0.5 * tol;
  opt.max_panel_width = 1.0;
  auto right = integrate_adaptive<Complex>(
      [&](double t) { return density(rho, Complex(R, t)) * Complex(0, 1); },
      0.0, R, opt);
  auto left = integrate_adaptive<Complex>(
      [&](double t) { return density(rho, Complex(-R, t)) * Complex(0, 1); },
      0.0, R, opt);
  return right.value - left.value;
}

Complex arc_value(const Pitch& rho, double R, double tol,
                  Complex (*density)(const Pitch&, Complex)) {
  double radius = std::sqrt(2.0) * R;
  AdaptiveOptions opt;
  opt.abs_tol = tol;
  opt.max_panel_width = kPi / 64.0;
  // z = radius e^{i theta}, counterclockwise from pi/4 to 3 pi/4.
  return integrate_adaptive<Complex>(
             [&](double theta) {
               Complex z = radius * Complex(std::cos(theta), std::sin(theta));
               return density(rho, z) * Complex(0, 1) * z;
             },
             kPi / 4.0, 3.0 * kPi / 4.0, opt)
      .value;
}

Complex regularized(const Pitch& rho, Complex z) {
  return m_rho_complex(rho, z);
}

}  // namespace

double contour_abscissa(long k) {
  check_k(k, "contour_abscissa");
  return (2.0 * static_cast<double>(k) + 0.5) * kPi;
}

double side_integral(const Pitch& rho, long k, double tol) {
  check_k(k, "side_integral");
  Complex s = side_pair(rho, contour_abscissa(k), tol, &unregularized);
  return s.real();
}

double arc_integral(const Pitch& rho, long k, double tol) {
  check_k(k, "arc_integral");
  return std::abs(arc_value(rho, contour_abscissa(k), tol, &unregularized));
}

ContourCheck closed_contour_check(const Pitch& rho, long k, double tol) {
  check_k(k, "closed_contour_check");
  double R = contour_abscissa(k);
  double r = rho.value();
  double leg_tol = tol / 8.0;
  AdaptiveOptions opt;
  opt.abs_tol = leg_tol;
  auto bottom = integrate_adaptive<double>(
      [&](double t) { return m_rho_real(rho, t); }, -R, R, opt);
  Complex total = Complex(bottom.value, 0.0) +
                  side_pair(rho, R, leg_tol, &regularized) +
                  arc_value(rho, R, leg_tol, &regularized);
  // Enclosed poles: strip roots 1..k and their reflections -conj(z_j);
  // each mirror pair contributes 2 i Im(1/E'(z_j)) to the residue sum of
  // 1/E_rho, and the regularizing -1/z^2 integrates to zero around any
  // closed loop avoiding the origin.
  KahanSum imsum;
  double arc_radius = std::sqrt(2.0) * R;
  for (long j = 1; j <= k; ++j) {
    StripRoot root = refine_root(rho, j);
    if (!(std::abs(root.z) < arc_radius && root.z.real() < R &&
          root.z.imag() > 0.0)) {
      throw IndeterminateCountError(
          "closed_contour_check: strip root outside the contour");
    }
    imsum.add(residue_term(rho, root).imag());
  }
  Complex residue_value(-4.0 * kPi * (r * r + 1.0) * imsum.result(), 0.0);
  return {total, residue_value, std::abs(total - residue_value), 2 * k};
}

}  // namespace helix
