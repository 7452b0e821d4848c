#include <cmath>
#include <complex>

#include "doctest.h"
#include "helix/accumulate.hpp"
#include "helix/errors.hpp"
#include "helix/kernel.hpp"
#include "helix/residue_series.hpp"
#include "helix/roots.hpp"

using helix::Complex;
using helix::Pitch;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("series terms at the closed-form and refined points") {
  Pitch rho(0.05);
  // approx term = 1 / E'(w_1) with the frozen derivative value.
  Complex ep(0.03141592653589793238463, 0.6375872726437233746217);
  Complex expected = 1.0 / ep;
  Complex term = helix::approx_term(rho, 1);
  CHECK(std::abs(term - expected) <= 1e-14 * std::abs(expected));
  // residue term = 1 / E'(z_1) at the refined root.
  helix::StripRoot root = helix::refine_root(rho, 1);
  Complex res = helix::residue_term(rho, root);
  Complex direct = 1.0 / helix::e_rho_prime(rho, root.z);
  CHECK(std::abs(res - direct) <= 1e-15 * std::abs(direct));
  // Both terms have negative imaginary part (the sign the sum relies on).
  CHECK(term.imag() < 0.0);
  CHECK(res.imag() < 0.0);
}

TEST_CASE("perturbation certificate eta") {
  CHECK(helix::eta_bound(Pitch(0.05), 1) ==
        doctest::Approx(0.54186336969483756138).epsilon(1e-13));
  // Decreasing in k.
  Pitch rho(0.05);
  double prev = helix::eta_bound(rho, 1);
  for (long k : {2L, 5L, 20L, 1000L}) {
    double eta = helix::eta_bound(rho, k);
    CHECK(eta < prev);
    prev = eta;
  }
  CHECK_THROWS_AS(helix::eta_bound(rho, 0), helix::DomainError);
}

TEST_CASE("truncation planning certifies its remainder") {
  Pitch rho(0.05);
  helix::SeriesTruncation plan = helix::plan_residue_truncation(rho, 1e-4);
  CHECK(plan.cutoff >= 1);
  CHECK(plan.cutoff <= helix::series_cutoff_cap());
  CHECK(plan.tail_bound <= 0.5e-4);
  // The bound is tight-ish: one step earlier would not certify.
  helix::SeriesTruncation plan2 = helix::plan_approx_truncation(rho, 1e-4);
  CHECK(plan2.tail_bound <= 0.5e-4);
  // Tightening the tolerance only increases the cutoff (3e-5 is the
  // tightest decade still reachable below the cap at this pitch).
  CHECK(helix::plan_residue_truncation(rho, 3e-5).cutoff > plan.cutoff);
}

TEST_CASE("strict planning throws at the cap, non-strict reports honestly") {
  Pitch rho(0.05);
  CHECK_THROWS_AS(helix::plan_residue_truncation(rho, 1e-12, true),
                  helix::ToleranceError);
  helix::SeriesTruncation capped =
      helix::plan_residue_truncation(rho, 1e-12, false);
  CHECK(capped.cutoff == helix::series_cutoff_cap());
  CHECK(capped.tail_bound > 0.5e-12);  // honest, not the requested target
  CHECK(std::isfinite(capped.tail_bound));
  CHECK_THROWS_AS(helix::plan_residue_truncation(rho, 0.0),
                  helix::DomainError);
}

TEST_CASE("refined partial sum matches an independent high-precision value") {
  // sum_{k<=4000} of the refined series at rho = 0.5, frozen from a
  // 30-digit computation with independently located roots.
  Pitch rho(0.5);
  helix::KahanSum im;
  for (long k = 1; k <= 4000; ++k) {
    im.add(helix::residue_term(rho, helix::refine_root(rho, k)).imag());
  }
  double value = -4.0 * kPi * (0.25 + 1.0) * im.result();
  CHECK(value == doctest::Approx(2.368554710615269626297).epsilon(5e-12));
}

TEST_CASE("approximate partial sum matches an independent value") {
  Pitch rho(0.05);
  helix::KahanSum im;
  for (long k = 1; k <= 40000; ++k) {
    im.add(helix::approx_term(rho, k).imag());
  }
  double value = -4.0 * kPi * (0.0025 + 1.0) * im.result();
  CHECK(value == doctest::Approx(62.38063832369757).epsilon(1e-12));
}

TEST_CASE("residue sum reproduces the quadrature oracle") {
  // The certified tail decays like 1/K, so the strict-mode tolerance floor
  // at the 1e7-term cap is a few 1e-7 here; 1e-6 is comfortably reachable.
  helix::EnergyEstimate est = helix::residue_sum(Pitch(0.5), 1e-6);
  CHECK(std::fabs(est.value - 2.368952548038920173372) <= 1.1e-6);
  CHECK(est.method == helix::Method::residue_series);
  CHECK(est.tail_bound <= est.tolerance);
  CHECK(est.tolerance == 1e-6);

  helix::EnergyEstimate est1 = helix::residue_sum(Pitch(1.0), 1e-6);
  CHECK(std::fabs(est1.value - 0.8045048267922019542514) <= 1.1e-6);
}

TEST_CASE("approximate sum lands within the transfer factor") {
  Pitch rho(0.05);
  helix::EnergyEstimate approx = helix::approx_sum(rho, 1e-4);
  helix::EnergyEstimate refined = helix::residue_sum(rho, 1e-3);
  CHECK(approx.method == helix::Method::approx_series);
  // |I - Itilde| <= 11 sqrt(5) rho Itilde plus both tail budgets.
  double bound = 11.0 * std::sqrt(5.0) * 0.05 * approx.value +
                 approx.tolerance + refined.tolerance;
  CHECK(std::fabs(refined.value - approx.value) <= bound);
  // And the two really are distinct beyond their tolerances at this pitch.
  CHECK(std::fabs(refined.value - approx.value) > 0.1);
}

TEST_CASE("sums are deterministic") {
  helix::EnergyEstimate a = helix::residue_sum(Pitch(0.5), 1e-6);
  helix::EnergyEstimate b = helix::residue_sum(Pitch(0.5), 1e-6);
  CHECK(a.value == b.value);
  helix::EnergyEstimate c = helix::approx_sum(Pitch(0.5), 1e-6);
  helix::EnergyEstimate d = helix::approx_sum(Pitch(0.5), 1e-6);
  CHECK(c.value == d.value);
}

TEST_CASE("cutoff cap accessor") {
  CHECK(helix::series_cutoff_cap() == 10000000);
}
