#include <cmath>

#include "doctest.h"
#include "helix/errors.hpp"
#include "helix/special_functions.hpp"

using helix::SigmaBranch;

TEST_CASE("sigma_map values and limiting behavior") {
  CHECK(helix::sigma_map(0.0) == 0.0);
  CHECK(helix::sigma_map(2.0) ==
        doctest::Approx(0.53160445766815938424).epsilon(1e-15));
  // Odd function.
  CHECK(helix::sigma_map(-2.0) == -helix::sigma_map(2.0));
  // Decays at infinity without overflowing cosh.
  CHECK(helix::sigma_map(1000.0) < 1e-300);
  CHECK(helix::sigma_map(std::numeric_limits<double>::infinity()) == 0.0);
  CHECK_THROWS_AS(helix::sigma_map(std::nan("")), helix::DomainError);
}

TEST_CASE("sigma_map_derivative sign structure") {
  CHECK(helix::sigma_map_derivative(0.0) == doctest::Approx(1.0));
  CHECK(helix::sigma_map_derivative(0.5) > 0.0);
  CHECK(helix::sigma_map_derivative(2.0) < 0.0);
}

TEST_CASE("alpha and beta solve their defining identities") {
  const helix::AlphaBeta& ab = helix::alpha_beta();
  CHECK(ab.beta == doctest::Approx(1.1996786402577338339).epsilon(1e-13));
  CHECK(ab.alpha == doctest::Approx(0.66274341934918158097).epsilon(1e-13));
  CHECK(std::fabs(1.0 - ab.beta * std::tanh(ab.beta)) < 1e-12);
  CHECK(helix::sigma_map(ab.beta) == doctest::Approx(ab.alpha).epsilon(1e-15));
  CHECK(std::fabs(helix::sigma_map_derivative(ab.beta)) < 1e-12);
  // 1/alpha, used by downstream identities.
  CHECK(1.0 / ab.alpha ==
        doctest::Approx(1.5088795615383199289).epsilon(1e-13));
  // Cached accessor agrees with a fresh solve.
  helix::AlphaBeta fresh = helix::solve_alpha_beta();
  CHECK(fresh.alpha == ab.alpha);
  CHECK(fresh.beta == ab.beta);
}

TEST_CASE("sigma_inverse on both branches") {
  const helix::AlphaBeta& ab = helix::alpha_beta();
  CHECK(helix::sigma_inverse(0.1, SigmaBranch::inner) ==
        doctest::Approx(0.10050549300503644746).epsilon(1e-13));
  CHECK(helix::sigma_inverse(0.1, SigmaBranch::outer) ==
        doctest::Approx(4.4995964972141486198).epsilon(1e-13));
  // Both branches meet at the maximum.
  CHECK(helix::sigma_inverse(ab.alpha, SigmaBranch::inner) ==
        doctest::Approx(ab.beta).epsilon(1e-9));
  CHECK(helix::sigma_inverse(ab.alpha, SigmaBranch::outer) ==
        doctest::Approx(ab.beta).epsilon(1e-9));
  // Inner branch is odd; zero maps to zero.
  CHECK(helix::sigma_inverse(-0.1, SigmaBranch::inner) ==
        -helix::sigma_inverse(0.1, SigmaBranch::inner));
  CHECK(helix::sigma_inverse(0.0, SigmaBranch::inner) == 0.0);
  // Round trips.
  for (double v : {0.01, 0.2, 0.5, 0.65}) {
    CHECK(helix::sigma_map(helix::sigma_inverse(v, SigmaBranch::inner)) ==
          doctest::Approx(v).epsilon(1e-11));
    CHECK(helix::sigma_map(helix::sigma_inverse(v, SigmaBranch::outer)) ==
          doctest::Approx(v).epsilon(1e-11));
  }
  // Outer branch sits at or beyond beta, inner at or below.
  CHECK(helix::sigma_inverse(0.5, SigmaBranch::outer) >= ab.beta);
  CHECK(helix::sigma_inverse(0.5, SigmaBranch::inner) <= ab.beta);
  // Zero maps to +infinity on the outer branch.
  CHECK(std::isinf(helix::sigma_inverse(0.0, SigmaBranch::outer)));
}

TEST_CASE("sigma_inverse branch domain errors") {
  const helix::AlphaBeta& ab = helix::alpha_beta();
  CHECK_THROWS_AS(helix::sigma_inverse(ab.alpha + 1e-3, SigmaBranch::inner),
                  helix::DomainError);
  CHECK_THROWS_AS(helix::sigma_inverse(ab.alpha + 1e-3, SigmaBranch::outer),
                  helix::DomainError);
  // The outer branch never takes negative values.
  CHECK_THROWS_AS(helix::sigma_inverse(-0.1, SigmaBranch::outer),
                  helix::DomainError);
  CHECK_THROWS_AS(
      helix::sigma_inverse(std::nan(""), SigmaBranch::inner),
      helix::DomainError);
}

TEST_CASE("c_k constants") {
  helix::CkConstant c1 = helix::solve_ck(1);
  helix::CkConstant c2 = helix::solve_ck(2);
  helix::CkConstant c50 = helix::solve_ck(50);
  CHECK(c1.k == 1);
  CHECK(c1.value == doctest::Approx(2.7983860457838871367).epsilon(1e-13));
  CHECK(c2.value == doctest::Approx(6.1212504668980683013).epsilon(1e-13));
  CHECK(c50.value == doctest::Approx(157.07326630974873928).epsilon(1e-13));
  // Derived combinations.
  CHECK(c2.value * c2.value * std::cos(c2.value) ==
        doctest::Approx(36.979497857311558987).epsilon(1e-12));
  double pi = std::acos(-1.0);
  CHECK(pi - c1.value ==
        doctest::Approx(0.34320660780590610174).epsilon(1e-12));
  const helix::AlphaBeta& ab = helix::alpha_beta();
  CHECK(std::asinh(c2.value / (ab.alpha * std::cos(c2.value))) ==
        doctest::Approx(2.9322923344835629505).epsilon(1e-12));
  // Defining residual and interval membership.
  for (int k : {1, 2, 7, 50}) {
    double c = helix::solve_ck(k).value;
    CHECK(c > (k - 0.5) * pi);
    CHECK(c < k * pi);
    CHECK(std::fabs(c * std::tan(c) + 1.0) < 1e-8 * (1.0 + c * c));
  }
  // Cache returns identical bits.
  CHECK(helix::solve_ck(2).value == c2.value);
  CHECK_THROWS_AS(helix::solve_ck(0), helix::DomainError);
}

TEST_CASE("arcsinh_ratio") {
  CHECK(helix::arcsinh_ratio(0.5) ==
        doctest::Approx(0.962423650119206895).epsilon(1e-15));
  CHECK(helix::arcsinh_ratio(-3.0) ==
        doctest::Approx(0.60614881974402227449).epsilon(1e-15));
  // Even in u.
  CHECK(helix::arcsinh_ratio(2.5) == helix::arcsinh_ratio(-2.5));
  // Value lies in (0, 1] and decreases with |u|.
  double prev = 1.0;
  for (double u : {1e-7, 1e-3, 0.1, 1.0, 10.0, 1e6}) {
    double v = helix::arcsinh_ratio(u);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    CHECK(v <= prev);
    prev = v;
  }
  // Below ~4e-8 the ratio rounds to exactly 1 in double precision.
  CHECK(helix::arcsinh_ratio(1e-9) == 1.0);
  CHECK_THROWS_AS(helix::arcsinh_ratio(0.0), helix::DomainError);
  CHECK_THROWS_AS(
      helix::arcsinh_ratio(std::numeric_limits<double>::infinity()),
      helix::DomainError);
}
