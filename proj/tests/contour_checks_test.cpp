#include <cmath>

#include "doctest.h"
#include "helix/contour_checks.hpp"
#include "helix/errors.hpp"

using helix::Pitch;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("contour abscissa") {
  CHECK(helix::contour_abscissa(1) == doctest::Approx(2.5 * kPi));
  CHECK(helix::contour_abscissa(3) == doctest::Approx(6.5 * kPi));
  CHECK_THROWS_AS(helix::contour_abscissa(0), helix::DomainError);
}

TEST_CASE("side integrals decay like 1/R") {
  Pitch rho(0.5);
  double s1 = std::fabs(helix::side_integral(rho, 1));
  double s4 = std::fabs(helix::side_integral(rho, 4));
  CHECK(s1 > 0.0);
  CHECK(s4 < s1);
  // Roughly 1/R decay: quadrupling the index shrinks by at least 2x.
  CHECK(s4 < 0.5 * s1);
}

TEST_CASE("arc integrals decay exponentially") {
  Pitch rho(0.5);
  double a1 = helix::arc_integral(rho, 1);
  double a2 = helix::arc_integral(rho, 2);
  double a3 = helix::arc_integral(rho, 3);
  CHECK(a1 > 0.0);
  CHECK(a2 < 0.05 * a1);
  CHECK(a3 < 0.05 * a2);
}

TEST_CASE("closed contour matches the residue sum") {
  for (double r : {0.3, 1.0}) {
    Pitch rho(r);
    for (long k : {2L, 3L}) {
      helix::ContourCheck chk = helix::closed_contour_check(rho, k, 1e-8);
      CHECK(chk.roots_inside == 2 * k);
      CHECK(chk.discrepancy <= 1e-7);
      // Both sides are essentially real and equal.
      CHECK(std::fabs(chk.contour_value.imag()) <= 1e-7);
      CHECK(std::fabs(chk.contour_value.real() - chk.residue_value.real()) <=
            1e-7);
    }
  }
}

TEST_CASE("contour input validation") {
  CHECK_THROWS_AS(helix::side_integral(Pitch(0.5), 0), helix::DomainError);
  CHECK_THROWS_AS(helix::arc_integral(Pitch(0.5), -1), helix::DomainError);
  CHECK_THROWS_AS(helix::closed_contour_check(Pitch(0.5), 0),
                  helix::DomainError);
}
