#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "helix/accumulate.hpp"
#include "helix/errors.hpp"

namespace helix {

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  double max_panel_width = 3.141592653589793;
  long max_panels = 1000000;  // total accepted-panel budget
};

template <class V>
struct AdaptiveResult {
  V value;
  double error_bound;  // sum of per-panel error estimates
  long panels;         // accepted panels
};

namespace gk15 {

// 15-point Kronrod nodes (positive half) and weights, with the embedded
// 7-point Gauss weights.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct PanelEstimate {
  V value;
  double error;
  double resabs;  // integral of |f| estimate, used for the rounding floor
};

// One Gauss-Kronrod 15(7) application on [a, b] with the classical
// resasc-scaled error estimate.
template <class V, class F>
PanelEstimate<V> apply(F& f, double a, double b) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  V fv[15];
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(c - h * xgk[j]);
    fv[14 - j] = f(c + h * xgk[j]);
  }
  fv[7] = f(c);
  V resk{};
  V resg{};
  double resabs = 0.0;
  for (int j = 0; j < 7; ++j) {
    V pair = fv[j] + fv[14 - j];
    resk += wgk[j] * pair;
    resabs += wgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) resg += wg[j / 2] * pair;
  }
  resk += wgk[7] * fv[7];
  resg += wg[3] * fv[7];
  resabs += wgk[7] * std::abs(fv[7]);
  V reskh = resk * 0.5;
  double resasc = wgk[7] * std::abs(fv[7] - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += wgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));
  }
  resabs *= std::fabs(h);
  resasc *= std::fabs(h);
  double err = std::abs(resk - resg) * std::fabs(h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  double eps = 2.220446049250313e-16;
  if (resabs > 1e-290) err = std::max(err, eps * 50.0 * resabs);
  return {resk * h, err, resabs};
}

}  // namespace gk15

// Deterministic globally adaptive quadrature of f over [a, b]. Panels start
// at max_panel_width and bisect until each local error estimate fits within
// the share abs_tol * width / (b - a); accepted panels are accumulated left
// to right with compensated summation. Exceeding max_panels throws
// ToleranceError.
template <class V, class F>
AdaptiveResult<V> integrate_adaptive(F f, double a, double b,
                                     const AdaptiveOptions& opt = {}) {
  if (!(b > a)) throw DomainError("integrate_adaptive: requires b > a");
  double span = b - a;
  long n0 = static_cast<long>(std::ceil(span / opt.max_panel_width));
  n0 = std::max<long>(n0, 1);
  if (n0 > opt.max_panels) {
    throw ToleranceError("integrate_adaptive: panel budget too small for span");
  }
  struct Seg {
    double a, b;
  };
  // Depth-first, left-most first: the pending stack holds segments in
  // reverse order so acceptance happens left to right.
  std::vector<Seg> stack;
  stack.reserve(64);
  for (long i = n0; i-- > 0;) {
    double sa = a + span * static_cast<double>(i) / static_cast<double>(n0);
    double sb = a + span * static_cast<double>(i + 1) / static_cast<double>(n0);
    stack.push_back({sa, sb});
  }
  KahanAccumulator<V> value;
  KahanSum error;
  long accepted = 0;
  long processed = 0;
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    auto est = gk15::apply<V>(f, s.a, s.b);
    double share = opt.abs_tol * (s.b - s.a) / span;
    double mid = 0.5 * (s.a + s.b);
    bool splittable = mid > s.a && mid < s.b;
    // Panels whose estimate sits at the rounding floor cannot improve by
    // splitting: the floor is proportional to the integral of |f|, which
    // splits additively. Accept them and report the honest floor sum.
    bool at_floor = est.error <= 55.0 * 2.220446049250313e-16 * est.resabs;
    if (est.error <= share || at_floor || !splittable) {
      value.add(est.value);
      error.add(est.error);
      ++accepted;
    } else {
      stack.push_back({mid, s.b});
      stack.push_back({s.a, mid});
    }
    if (++processed > 2 * opt.max_panels || accepted > opt.max_panels) {
      char msg[200];
      std::snprintf(msg, sizeof(msg),
                    "integrate_adaptive: panel budget exhausted on "
                    "[%.12g, %.12g] (abs_tol=%.3g, last panel error=%.3g)",
                    s.a, s.b, opt.abs_tol, est.error);
      throw ToleranceError(msg);
    }
  }
  return {value.result(), error.result(), accepted};
}

}  // namespace helix
