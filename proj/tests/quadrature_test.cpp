#include <cmath>

#include "doctest.h"
#include "helix/adaptive.hpp"
#include "helix/errors.hpp"
#include "helix/quadrature.hpp"
#include "helix/types.hpp"

using helix::Pitch;

namespace {
const double kPi = std::acos(-1.0);

// Independently computed reference values of I(rho), accurate to ~1e-20.
struct Ref {
  double rho;
  double value;
};
constexpr Ref kRefs[] = {
    {0.05, 62.62879774521276503208}, {0.1, 24.61501642425940515513},
    {0.5, 2.368952548038920173372},  {1.0, 0.8045048267922019542514},
    {2.0, 0.2397737150632926407378}, {5.0, 0.04123760781052845627329},
    {10.0, 0.01043040655246650362496},
    {50.0, 0.000418812020413312364597}};
}  // namespace

TEST_CASE("integral matches the reference values within the claim") {
  for (const Ref& ref : kRefs) {
    helix::EnergyEstimate est = helix::integrate_density(Pitch(ref.rho), 1e-10);
    CHECK(std::fabs(est.value - ref.value) <= est.tolerance);
    CHECK(est.tolerance <= 1.01e-10);
    CHECK(est.tail_bound >= 0.0);
    CHECK(est.tail_bound <= est.tolerance);
    CHECK(est.method == helix::Method::quadrature);
    CHECK(est.rho.value() == ref.rho);
  }
}

TEST_CASE("looser tolerances are honored too") {
  helix::EnergyEstimate est = helix::integrate_density(Pitch(0.5), 1e-6);
  CHECK(std::fabs(est.value - 2.368952548038920173372) <= 1e-6);
  CHECK(est.tail_bound <= est.tolerance);
  CHECK(est.tolerance == 1e-6);
}

TEST_CASE("sandwich bounds hold strictly") {
  for (double r : {0.3, 2.0, 10.0}) {
    double v = helix::integrate_density(Pitch(r), 1e-10).value;
    CHECK(v > kPi / (3.0 * (r * r + 1.0)));
    CHECK(v < kPi / (3.0 * r * r));
  }
}

TEST_CASE("integration is deterministic") {
  helix::EnergyEstimate a = helix::integrate_density(Pitch(0.7), 1e-10);
  helix::EnergyEstimate b = helix::integrate_density(Pitch(0.7), 1e-10);
  CHECK(a.value == b.value);
  CHECK(a.tail_bound == b.tail_bound);
}

TEST_CASE("sinc deficit integral equals 2 pi / 3") {
  double v = helix::sinc_deficit_integral(1e-10);
  CHECK(std::fabs(v - 2.0 * kPi / 3.0) <= 1e-10);
}

TEST_CASE("didrho matches independent references") {
  CHECK(helix::didrho(Pitch(0.5), 1e-9) ==
        doctest::Approx(-7.121778630891289891456).epsilon(2e-10));
  CHECK(helix::didrho(Pitch(1.0), 1e-9) ==
        doctest::Approx(-1.319249789449658156242).epsilon(1e-9));
  CHECK(helix::didrho(Pitch(2.0), 1e-9) ==
        doctest::Approx(-0.2211871920482407331742).epsilon(1e-8));
}

TEST_CASE("didrho agrees with a centered difference of the integral") {
  for (double r : {0.5, 1.0}) {
    double h = 1e-4;
    double up = helix::integrate_density(Pitch(r + h), 1e-11).value;
    double dn = helix::integrate_density(Pitch(r - h), 1e-11).value;
    double fd = (up - dn) / (2.0 * h);
    double d = helix::didrho(Pitch(r), 1e-10);
    CHECK(d < 0.0);
    CHECK(std::fabs(fd - d) <= 1e-5 * std::fabs(d));
  }
}

TEST_CASE("tolerance validation") {
  CHECK_THROWS_AS(helix::integrate_density(Pitch(1.0), 0.0),
                  helix::DomainError);
  CHECK_THROWS_AS(helix::integrate_density(Pitch(1.0), -1e-10),
                  helix::DomainError);
  CHECK_THROWS_AS(helix::sinc_deficit_integral(0.0), helix::DomainError);
  CHECK_THROWS_AS(helix::didrho(Pitch(1.0), 0.0), helix::DomainError);
}

TEST_CASE("adaptive integrator basics") {
  // Smooth polynomial integrates to machine accuracy in one panel per width.
  auto poly = [](double t) { return t * t * t - 2.0 * t + 1.0; };
  auto res = helix::integrate_adaptive<double>(poly, 0.0, 2.0);
  CHECK(res.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(res.panels >= 1);
  // A peaked integrand subdivides but still converges.
  auto peak = [](double t) { return 1.0 / (1e-4 + t * t); };
  auto res2 = helix::integrate_adaptive<double>(peak, -1.0, 1.0,
                                                {1e-12, 0.5, 100000});
  double exact = 2.0 * std::atan(100.0) / 0.01;
  CHECK(res2.value == doctest::Approx(exact).epsilon(1e-12));
  CHECK(res2.panels > 4);
  CHECK_THROWS_AS(
      helix::integrate_adaptive<double>(poly, 1.0, 0.0),
      helix::DomainError);
}
