#include "helix/curve_energy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "helix/accumulate.hpp"
#include "helix/adaptive.hpp"
#include "helix/errors.hpp"
#include "helix/kernel.hpp"

namespace helix {
namespace {

// Model window half-width = kDeltaFactor * (widest sample spacing near the
// diagonal), in arclength. Kept small so the curvature model's O(delta^2)
// bias stays below the quadrature tolerances.
constexpr double kDeltaFactor = 3.0;

// 7-point Gauss rule (the Kronrod-embedded subset) for per-segment
// arclength.
constexpr double kG7x[3] = {0.405845151377397166906606412076961,
                            0.741531185599394439863864773280788,
                            0.949107912342758524526189684047851};
constexpr double kG7w[4] = {0.417959183673469387755102040816327,
                            0.381830050505118944950369775488975,
                            0.279705391489276667901467771423780,
                            0.129484966168869693270611432679082};

std::size_t locate(const std::vector<double>& xs, double v) {
  auto it = std::upper_bound(xs.begin(), xs.end(), v);
  std::size_t i = (it == xs.begin()) ? 0 : static_cast<std::size_t>(it - xs.begin() - 1);
  return std::min(i, xs.size() - 2);
}

struct Hermite {
  // Basis values for u in [0, 1] on a width-h segment.
  static Vec3 position(const Vec3& p0, const Vec3& p1, const Vec3& m0,
                       const Vec3& m1, double h, double u) {
    double u2 = u * u;
    double u3 = u2 * u;
    double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    double h10 = u3 - 2.0 * u2 + u;
    double h01 = -2.0 * u3 + 3.0 * u2;
    double h11 = u3 - u2;
    return h00 * p0 + (h10 * h) * m0 + h01 * p1 + (h11 * h) * m1;
  }
  static Vec3 derivative(const Vec3& p0, const Vec3& p1, const Vec3& m0,
                         const Vec3& m1, double h, double u) {
    double u2 = u * u;
    double d00 = (6.0 * u2 - 6.0 * u) / h;
    double d10 = 3.0 * u2 - 4.0 * u + 1.0;
    double d11 = 3.0 * u2 - 2.0 * u;
    return d00 * (p0 - p1) + d10 * m0 + d11 * m1;
  }
  static double scalar(double y0, double y1, double s0, double s1, double h,
                       double u) {
    double u2 = u * u;
    double u3 = u2 * u;
    double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    double h10 = u3 - 2.0 * u2 + u;
    double h01 = -2.0 * u3 + 3.0 * u2;
    double h11 = u3 - u2;
    return h00 * y0 + h10 * h * s0 + h01 * y1 + h11 * h * s1;
  }
};

double param_front(const SampledCurve& c) { return c.params.front(); }
double param_back(const SampledCurve& c) { return c.params.back(); }
double param_period(const SampledCurve& c) {
  return c.params.back() - c.params.front();
}

// Map an arbitrary parameter into the fundamental domain (closed curves) or
// clamp roundoff-level excursions (open curves).
double normalize_param(const SampledCurve& c, double t) {
  if (!std::isfinite(t)) throw DomainError("curve parameter must be finite");
  double a = param_front(c);
  double b = param_back(c);
  if (c.closed) {
    double period = b - a;
    double v = std::fmod(t - a, period);
    if (v < 0.0) v += period;
    return a + v;
  }
  double slack = 1e-9 * (b - a);
  if (t < a - slack || t > b + slack) {
    throw DomainError("curve parameter outside the sampled domain");
  }
  return std::min(std::max(t, a), b);
}

Vec3 position_at(const SampledCurve& c, double t) {
  double tn = normalize_param(c, t);
  std::size_t i = locate(c.params, tn);
  double h = c.params[i + 1] - c.params[i];
  double u = (tn - c.params[i]) / h;
  return Hermite::position(c.points[i], c.points[i + 1], c.tangents[i],
                           c.tangents[i + 1], h, u);
}

Vec3 derivative_at(const SampledCurve& c, double t) {
  double tn = normalize_param(c, t);
  std::size_t i = locate(c.params, tn);
  double h = c.params[i + 1] - c.params[i];
  double u = (tn - c.params[i]) / h;
  return Hermite::derivative(c.points[i], c.points[i + 1], c.tangents[i],
                             c.tangents[i + 1], h, u);
}

// In-segment arc offset from the knot arclen[i], evaluated entirely in
// small magnitudes (the Hermite identity h00 = 1 - h01 folds the cumulative
// values into their difference). Keeping the offset separate from the
// O(length) cumulative table lets nearby arc distances be formed without
// catastrophic cancellation.
double local_arc(const SampledCurve& c, std::size_t i, double u) {
  double h = c.params[i + 1] - c.params[i];
  double da = c.arclen[i + 1] - c.arclen[i];
  double u2 = u * u;
  double u3 = u2 * u;
  double h10 = u3 - 2.0 * u2 + u;
  double h01 = -2.0 * u3 + 3.0 * u2;
  double h11 = u3 - u2;
  double v = h01 * da + h * (h10 * c.arc_slope[i] + h11 * c.arc_slope[i + 1]);
  return std::min(std::max(v, 0.0), da);
}

// Arc position as a knot index plus the in-segment offset above.
struct ArcAnchor {
  std::size_t seg;
  double local;
};

// A distant stretch of the curve passing through the evaluation point makes
// the energy integrands non-integrable: the adaptive quadrature would split
// without bound long before its pointwise chord/arc guard could trigger.
// Scan the samples up front and fail with a diagnosis instead.
void check_embedding_at(const SampledCurve& c, double a0, const Vec3& p0,
                        double delta) {
  double total = c.arclen.back();
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    double d = std::fabs(c.arclen[i] - a0);
    if (c.closed) d = std::min(d, total - d);
    if (d <= delta) continue;
    if ((c.points[i] - p0).norm() < 1e-6 * d) {
      throw DegenerateCurveError(
          "chord/arc degeneracy: curve nearly self-intersects (an open "
          "curve whose ends meet must be marked closed)");
    }
  }
}

ArcAnchor arc_anchor(const SampledCurve& c, double t) {
  double tn = normalize_param(c, t);
  std::size_t i = locate(c.params, tn);
  double h = c.params[i + 1] - c.params[i];
  double u = (tn - c.params[i]) / h;
  return {i, local_arc(c, i, u)};
}

double arc_at(const SampledCurve& c, double t) {
  ArcAnchor a = arc_anchor(c, t);
  return c.arclen[a.seg] + a.local;
}

double wrap_arc(const SampledCurve& c, double a) {
  double total = c.arclen.back();
  if (!c.closed) return std::min(std::max(a, 0.0), total);
  double v = std::fmod(a, total);
  if (v < 0.0) v += total;
  return v;
}

double inverse_arc(const SampledCurve& c, double a) {
  double total = c.arclen.back();
  if (!c.closed) {
    double slack = 1e-9 * total;
    if (a < -slack || a > total + slack) {
      throw DomainError("arclength outside the curve");
    }
  }
  double aw = wrap_arc(c, a);
  std::size_t i = locate(c.arclen, aw);
  double lo = c.params[i];
  double hi = c.params[i + 1];
  // arc_at is monotone on the segment (limited slopes), so bisection is
  // safe and converges to interval exhaustion.
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (arc_at(c, mid) < aw) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Signed circular arc difference A(t) - a0, reduced to (-L/2, L/2] for
// closed curves.
// Signed arc distance from an anchored base point. The knot-table part
// subtracts two cumulative entries (exact for nearby knots), the local
// offsets stay small, so the result keeps full relative precision even on
// very long curves where arc_at(t) - a0 would lose the trailing digits.
double arc_delta_anchored(const SampledCurve& c, const ArcAnchor& base,
                          double t) {
  ArcAnchor at = arc_anchor(c, t);
  double d = (c.arclen[at.seg] - c.arclen[base.seg]) + (at.local - base.local);
  if (c.closed) {
    double total = c.arclen.back();
    d = std::fmod(d, total);
    if (d > 0.5 * total) d -= total;
    if (d <= -0.5 * total) d += total;
  }
  return d;
}

// Widest sample spacing (in arclength) within +-delta of arc position a0,
// iterated until the window based on kDeltaFactor times that width is
// stable.
double diagonal_halfwidth(const SampledCurve& c, double a0) {
  const std::vector<double>& al = c.arclen;
  std::size_t nseg = al.size() - 1;
  double total = al.back();
  std::size_t i0 = locate(al, wrap_arc(c, a0));
  double delta = kDeltaFactor * (al[i0 + 1] - al[i0]);
  for (int pass = 0; pass < 64; ++pass) {
    double widest = 0.0;
    // walk right
    double reach = 0.0;
    std::size_t i = i0;
    reach = al[i0 + 1] - wrap_arc(c, a0);
    widest = std::max(widest, al[i0 + 1] - al[i0]);
    while (reach < delta) {
      if (i + 1 < nseg) {
        ++i;
      } else if (c.closed) {
        i = 0;
      } else {
        break;
      }
      if (i == i0) break;
      widest = std::max(widest, al[i + 1] - al[i]);
      reach += al[i + 1] - al[i];
    }
    // walk left
    i = i0;
    reach = wrap_arc(c, a0) - al[i0];
    while (reach < delta) {
      if (i > 0) {
        --i;
      } else if (c.closed) {
        i = nseg - 1;
      } else {
        break;
      }
      if (i == i0) break;
      widest = std::max(widest, al[i + 1] - al[i]);
      reach += al[i + 1] - al[i];
    }
    double next = kDeltaFactor * widest;
    if (next <= delta * (1.0 + 1e-12)) break;
    delta = next;
  }
  if (c.closed) delta = std::min(delta, 0.25 * total);
  return delta;
}

// Integrate f(real parameter) over the virtual interval [a, b] (wrapping
// modulo the period on closed curves), with panels aligned to the sample
// knots and per-piece error shares proportional to width. Pieces falling
// inside the per-piece GK15 estimate are accepted directly; the rest
// escalate to bisection. An integrand may carry a rounding-magnitude
// companion in the imaginary part of a Complex value: it contributes to
// the per-panel |f| integral and thereby to the rounding-floor acceptance,
// which is what lets differences of large terms integrate to tolerances
// below their own cancellation noise.
template <class V = double, class F>
AdaptiveResult<V> integrate_aligned(const SampledCurve& c, double a,
                                    double b, double tol_total, F&& f) {
  AdaptiveResult<V> out{V{}, 0.0, 0};
  if (!(b > a)) return out;
  double span = b - a;
  double front = param_front(c);
  std::size_t nseg = c.params.size() - 1;
  KahanAccumulator<V> value;
  KahanSum error;
  auto g = [&](double u) { return f(c.closed ? normalize_param(c, u) : u); };
  double cur = a;
  std::size_t guard = 0;
  while (cur < b) {
    double real = c.closed ? normalize_param(c, cur) : std::min(std::max(cur, front), param_back(c));
    std::size_t i = locate(c.params, real);
    double step = c.params[i + 1] - real;
    double width_i = c.params[i + 1] - c.params[i];
    if (step <= 1e-12 * width_i) {
      // Sitting on a knot boundary: take the whole next segment.
      i = (i + 1 < nseg) ? i + 1 : (c.closed ? 0 : i);
      step = c.params[i + 1] - c.params[i];
    }
    double next = std::min(b, cur + step);
    if (!(next > cur)) break;
    double share = tol_total * (next - cur) / span;
    auto est = gk15::apply<V>(g, cur, next);
    if (est.error <= share) {
      value.add(est.value);
      error.add(est.error);
      ++out.panels;
    } else {
      AdaptiveOptions opt;
      opt.abs_tol = share;
      opt.max_panel_width = next - cur;
      opt.max_panels = 100000;
      auto res = integrate_adaptive<V>(g, cur, next, opt);
      value.add(res.value);
      error.add(res.error_bound);
      out.panels += res.panels;
    }
    cur = next;
    if (++guard > 4 * nseg + 64) {
      // Never needs more pieces than knots crossed; bail out rather than
      // loop on pathological roundoff.
      throw ConvergenceError("knot-aligned integration failed to advance");
    }
  }
  out.value = value.result();
  out.error_bound = error.result();
  return out;
}

double segment_arclength(const std::vector<Vec3>& pts,
                         const std::vector<Vec3>& tans,
                         const std::vector<double>& params, std::size_t i) {
  double h = params[i + 1] - params[i];
  auto speed = [&](double u) {
    return Hermite::derivative(pts[i], pts[i + 1], tans[i], tans[i + 1], h, u)
        .norm();
  };
  double s = kG7w[0] * speed(0.5);
  for (int k = 0; k < 3; ++k) {
    double x = 0.5 * kG7x[k];
    s += kG7w[k + 1] * (speed(0.5 - x) + speed(0.5 + x));
  }
  return s * 0.5 * h;
}

double curve_scale(const std::vector<Vec3>& pts) {
  double m = 1.0;
  for (const Vec3& p : pts) m = std::max(m, p.cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

SampledCurve make_curve(std::vector<Vec3> points, std::vector<Vec3> tangents,
                        std::vector<double> params, bool closed) {
  std::size_t n = points.size();
  if (n < 8) throw DegenerateCurveError("curve needs at least 8 samples");
  if (tangents.size() != n || params.size() != n) {
    throw DegenerateCurveError("curve sample arrays must have equal length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!points[i].allFinite() || !tangents[i].allFinite() ||
        !std::isfinite(params[i])) {
      throw DegenerateCurveError("curve samples must be finite");
    }
    if (tangents[i].norm() == 0.0) {
      throw DegenerateCurveError("curve tangents must be nonzero");
    }
    if (i > 0 && !(params[i] > params[i - 1])) {
      throw DegenerateCurveError("curve parameters must increase strictly");
    }
  }
  if (closed) {
    double scale = curve_scale(points);
    if ((points.back() - points.front()).norm() > 1e-9 * scale ||
        (tangents.back() - tangents.front()).norm() >
            1e-9 * (scale + tangents.front().norm())) {
      throw DegenerateCurveError(
          "closed curve must repeat its first sample at the end");
    }
    points.back() = points.front();
    tangents.back() = tangents.front();
  }

  SampledCurve c;
  c.points = std::move(points);
  c.tangents = std::move(tangents);
  c.params = std::move(params);
  c.closed = closed;

  c.arclen.resize(n);
  c.arclen[0] = 0.0;
  KahanSum acc;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double s = segment_arclength(c.points, c.tangents, c.params, i);
    if (!(s > 0.0)) {
      throw DegenerateCurveError("curve has a zero-length segment");
    }
    acc.add(s);
    c.arclen[i + 1] = acc.result();
  }

  // Monotone (Fritsch-Carlson style) limiting of the arclength slopes:
  // slope_i = |tangent_i| clamped to three times the adjacent secants.
  c.arc_slope.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double cap = std::numeric_limits<double>::infinity();
    if (i > 0) {
      cap = std::min(cap, 3.0 * (c.arclen[i] - c.arclen[i - 1]) /
                              (c.params[i] - c.params[i - 1]));
    }
    if (i + 1 < n) {
      cap = std::min(cap, 3.0 * (c.arclen[i + 1] - c.arclen[i]) /
                              (c.params[i + 1] - c.params[i]));
    }
    c.arc_slope[i] = std::min(c.tangents[i].norm(), cap);
  }
  return c;
}

SampledCurve helix_curve(const Pitch& rho, double T, double alpha,
                         double h_min, double h_max) {
  if (!std::isfinite(T) || T <= 0.0) {
    throw DomainError("helix window must be positive");
  }
  if (!(alpha > 0.0) || !(h_min > 0.0) || !(h_max >= h_min)) {
    throw DomainError("helix grid parameters must be positive");
  }
  if (T < 8.0 * h_min) {
    throw DomainError("helix window too small for the sample spacing");
  }
  std::vector<double> pos;
  pos.push_back(0.0);
  double cur = 0.0;
  while (cur < T) {
    double h = std::min(std::max(alpha * cur, h_min), h_max);
    double next = cur + h;
    if (next >= T - 0.5 * h_min) next = T;
    pos.push_back(next);
    cur = next;
  }
  std::vector<double> params;
  params.reserve(2 * pos.size() - 1);
  for (std::size_t i = pos.size(); i-- > 1;) params.push_back(-pos[i]);
  for (double t : pos) params.push_back(t);

  double r = rho.value();
  std::vector<Vec3> points;
  std::vector<Vec3> tangents;
  points.reserve(params.size());
  tangents.reserve(params.size());
  for (double t : params) {
    points.emplace_back(std::cos(t), std::sin(t), r * t);
    tangents.emplace_back(-std::sin(t), std::cos(t), r);
  }
  SampledCurve c = make_curve(std::move(points), std::move(tangents),
                              std::move(params), false);
  // The builder knows the true geometry: the curve has constant speed
  // sqrt(r^2 + 1), so replace the interpolant-derived arclength table with the
  // exact linear one.  The interpolant arclength is relatively short by
  // O(h^4) on wide segments, which would otherwise bias intrinsic-distance
  // kernels evaluated far from the diagonal.
  double speed = std::hypot(1.0, r);
  for (std::size_t i = 0; i < c.params.size(); ++i) {
    c.arclen[i] = speed * (c.params[i] - c.params.front());
    c.arc_slope[i] = speed;
  }
  return c;
}

SampledCurve circle_curve(double radius, long n) {
  if (!std::isfinite(radius) || radius <= 0.0) {
    throw DomainError("circle radius must be positive");
  }
  if (n < 8) throw DomainError("circle needs at least 8 samples");
  std::vector<Vec3> points;
  std::vector<Vec3> tangents;
  std::vector<double> params;
  points.reserve(static_cast<std::size_t>(n) + 1);
  tangents.reserve(static_cast<std::size_t>(n) + 1);
  params.reserve(static_cast<std::size_t>(n) + 1);
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (long i = 0; i <= n; ++i) {
    double th = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    if (i == n) th = kTwoPi;
    points.emplace_back(radius * std::cos(th), radius * std::sin(th), 0.0);
    tangents.emplace_back(-radius * std::sin(th), radius * std::cos(th), 0.0);
    params.push_back(th);
  }
  points.back() = points.front();
  tangents.back() = tangents.front();
  return make_curve(std::move(points), std::move(tangents), std::move(params),
                    true);
}

Vec3 curve_position(const SampledCurve& c, double t) { return position_at(c, t); }

Vec3 curve_derivative(const SampledCurve& c, double t) {
  return derivative_at(c, t);
}

double total_length(const SampledCurve& c) { return c.arclen.back(); }

double curve_arclength(const SampledCurve& c, double t) { return arc_at(c, t); }

double param_at_arclength(const SampledCurve& c, double s) {
  return inverse_arc(c, s);
}

double intrinsic_distance(const SampledCurve& c, double s, double t) {
  double d = std::fabs(arc_at(c, t) - arc_at(c, s));
  if (c.closed) {
    double total = c.arclen.back();
    d = std::min(d, total - d);
  }
  return d;
}

Vec3 curvature_vector(const SampledCurve& c, double t) {
  double tn = normalize_param(c, t);
  std::size_t i = locate(c.params, tn);
  double w = c.params[i + 1] - c.params[i];
  double h = 0.5 * w;
  if (!c.closed) {
    // Keep the stencil inside the domain, nudging the evaluation point
    // inward when it sits on a boundary.
    double front = param_front(c);
    double back = param_back(c);
    tn = std::min(std::max(tn, front + 0.25 * w), back - 0.25 * w);
    h = std::min({h, tn - front, back - tn});
  }
  Vec3 d1 = derivative_at(c, tn);
  double speed2 = d1.squaredNorm();
  if (speed2 == 0.0) throw DegenerateCurveError("zero speed");
  Vec3 g2 = (position_at(c, tn + h) - 2.0 * position_at(c, tn) +
             position_at(c, tn - h)) /
            (h * h);
  Vec3 unit = d1 / std::sqrt(speed2);
  Vec3 perp = g2 - g2.dot(unit) * unit;
  return perp / speed2;
}

EnergyDensityValue pointwise_energy(const SampledCurve& c, double s0, double j,
                                    double p, double tol) {
  if (!(j >= 1.0) || !(p >= 1.0)) {
    throw DomainError("energy exponents must satisfy j >= 1, p >= 1");
  }
  if (!((j - 2.0) * p < 1.0)) {
    throw DomainError(
        "energy exponents must satisfy (j - 2) p < 1; the density "
        "diverges at the diagonal otherwise");
  }
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (c.arclen.empty()) throw DegenerateCurveError("curve not initialized");

  double front = param_front(c);
  double back = param_back(c);
  double period = param_period(c);
  double s0r = normalize_param(c, s0);
  ArcAnchor anchor0 = arc_anchor(c, s0r);
  double a0 = c.arclen[anchor0.seg] + anchor0.local;
  Vec3 p0 = position_at(c, s0r);
  double total = c.arclen.back();
  double delta = diagonal_halfwidth(c, a0);
  check_embedding_at(c, a0, p0, delta);

  // Model window in arclength, clipped to the domain for open curves.
  double lo_arc = a0 - delta;
  double hi_arc = a0 + delta;
  if (!c.closed) {
    lo_arc = std::max(lo_arc, 0.0);
    hi_arc = std::min(hi_arc, total);
  }
  double t_lo = inverse_arc(c, c.closed ? wrap_arc(c, lo_arc) : lo_arc);
  double t_hi = inverse_arc(c, c.closed ? wrap_arc(c, hi_arc) : hi_arc);
  // Virtual coordinates around s0r.
  if (c.closed) {
    if (t_lo > s0r) t_lo -= period;
    if (t_hi < s0r) t_hi += period;
  }
  t_lo = std::min(t_lo, s0r);
  t_hi = std::max(t_hi, s0r);

  double model_width = t_hi - t_lo;
  double direct_width =
      c.closed ? period - model_width : (t_lo - front) + (back - t_hi);
  direct_width = std::max(direct_width, 0.0);
  double full_width = model_width + direct_width;
  if (!(full_width > 0.0)) throw DegenerateCurveError("empty curve domain");

  double exph = (2.0 - j) * p;
  auto model_f = [&](double t) {
    double da = arc_delta_anchored(c, anchor0, t);
    double d = std::fabs(da);
    double mid_arc = c.closed ? wrap_arc(c, a0 + 0.5 * da) : a0 + 0.5 * da;
    double tm = inverse_arc(c, mid_arc);
    double kappa = curvature_vector(c, tm).norm();
    double model = std::pow(j * kappa * kappa / 24.0, p);
    if (exph != 0.0) model *= std::pow(d, exph);
    return model * derivative_at(c, t).norm();
  };
  bool simple21 = (j == 2.0 && p == 1.0);
  // The deficit is a difference of two large near-diagonal terms, so its
  // evaluation carries rounding noise proportional to their sum. That sum
  // rides along in the imaginary part: it never changes the value, but it
  // keeps the adaptive rounding floor honest (see integrate_aligned).
  auto direct_f = [&](double t) {
    Vec3 pt = position_at(c, t);
    double c2 = (pt - p0).squaredNorm();
    double d = std::fabs(arc_delta_anchored(c, anchor0, t));
    double chord = std::sqrt(c2);
    if (chord < 1e-9 * d) {
      throw DegenerateCurveError(
          "chord/arc degeneracy: curve nearly self-intersects");
    }
    double deficit, big;
    if (simple21) {
      deficit = 1.0 / c2 - 1.0 / (d * d);
      big = 1.0 / c2 + 1.0 / (d * d);
    } else {
      deficit = std::pow(chord, -j) - std::pow(d, -j);
      big = std::pow(chord, -j) + std::pow(d, -j);
    }
    if (deficit < 0.0) deficit = 0.0;
    double w = (p == 1.0) ? deficit : std::pow(deficit, p);
    double carrier = (p == 1.0) ? big : p * std::pow(big, p);
    double speed = derivative_at(c, t).norm();
    return Complex(w * speed, carrier * speed);
  };

  KahanSum value;
  // Fixed budget split. A width-proportional share would squeeze the tiny
  // model window to absolute tolerances below the noise floor of the
  // finite-difference curvature on long curves, where the adaptive
  // integrator can no longer converge; a quarter of the budget is always
  // a valid bound and never binds in practice.
  double tol_model = 0.25 * tol;
  if (exph < 0.0) {
    // For j > 2 the model factor D^exph is singular at the diagonal; a
    // fixed rule in t leaves a scale-invariant defect on the endpoint
    // panel and can never meet a width-proportional share there.  The
    // substitution v = D^(1+exph) absorbs the power exactly and leaves a
    // bounded integrand in arclength space.
    double m = 1.0 / (1.0 + exph);
    double d_left = a0 - lo_arc;
    double d_right = hi_arc - a0;
    double d_span = std::max(d_left, 0.0) + std::max(d_right, 0.0);
    auto side = [&](double sign, double d_hi, double share) {
      if (!(d_hi > 0.0)) return 0.0;
      auto f = [&](double v) {
        double d = std::pow(v, m);
        double mid_arc = a0 + sign * 0.5 * d;
        if (c.closed) mid_arc = wrap_arc(c, mid_arc);
        double kappa = curvature_vector(c, inverse_arc(c, mid_arc)).norm();
        return m * std::pow(j * kappa * kappa / 24.0, p);
      };
      AdaptiveOptions opt;
      opt.abs_tol = share;
      return integrate_adaptive<double>(f, 0.0, std::pow(d_hi, 1.0 + exph),
                                        opt)
          .value;
    };
    if (d_span > 0.0) {
      value.add(side(-1.0, d_left, tol_model * d_left / d_span));
      value.add(side(1.0, d_right, tol_model * d_right / d_span));
    }
  } else {
    if (s0r > t_lo) {
      double share = tol_model * (s0r - t_lo) / model_width;
      value.add(integrate_aligned(c, t_lo, s0r, share, model_f).value);
    }
    if (t_hi > s0r) {
      double share = tol_model * (t_hi - s0r) / model_width;
      value.add(integrate_aligned(c, s0r, t_hi, share, model_f).value);
    }
  }
  double tol_direct = tol - tol_model;
  if (direct_width > 0.0 && tol_direct > 0.0) {
    if (c.closed) {
      value.add(integrate_aligned<Complex>(c, t_hi, t_lo + period, tol_direct,
                                           direct_f)
                    .value.real());
    } else {
      double left = t_lo - front;
      double right = back - t_hi;
      if (left > 0.0) {
        value.add(integrate_aligned<Complex>(
                      c, front, t_lo, tol_direct * left / direct_width,
                      direct_f)
                      .value.real());
      }
      if (right > 0.0) {
        value.add(integrate_aligned<Complex>(
                      c, t_hi, back, tol_direct * right / direct_width,
                      direct_f)
                      .value.real());
      }
    }
  }
  return {s0, std::max(value.result(), 0.0), j, p};
}

double total_energy(const SampledCurve& c, double j, double p, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  double front = param_front(c);
  double back = param_back(c);
  double inner_tol = tol / (4.0 * (1.0 + total_length(c)));
  auto density = [&](double t) {
    return pointwise_energy(c, t, j, p, inner_tol).value *
           derivative_at(c, t).norm();
  };
  return integrate_aligned(c, front, back, 0.5 * tol, density).value;
}

double truncated_helix_energy(const Pitch& rho, double N, double tol) {
  if (!std::isfinite(N) || N <= 0.0) {
    throw DomainError("half-height must be positive");
  }
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  double a = N / rho.value();
  double span = 2.0 * a;
  constexpr double kPi = 3.141592653589793238462643383279503;
  if (span / kPi > 1e6) {
    throw ToleranceError("truncated helix: panel budget exceeded");
  }
  // The double integral of M(t - s) over the square [-a, a]^2 reduces
  // exactly to a single correlation integral against the tent weight:
  //   int_{-2a}^{2a} (2a - |u|) M(u) du = 2 int_0^{2a} (2a - u) M(u) du.
  auto f = [&](double u) { return (span - u) * m_rho_real(rho, u); };
  AdaptiveOptions opt;
  opt.abs_tol = tol;
  opt.max_panel_width = kPi;
  opt.max_panels = 1000000;
  auto res = integrate_adaptive<double>(f, 0.0, span, opt);
  return std::max(2.0 * res.value, 0.0);
}

Vec3 mobius_gradient_integrand(const SampledCurve& c, double t0, double s) {
  Vec3 gt = position_at(c, t0);
  Vec3 kappa_n = curvature_vector(c, t0);
  Vec3 gs = position_at(c, s);
  Vec3 ds = derivative_at(c, s);
  double speed = ds.norm();
  if (speed == 0.0) throw DegenerateCurveError("zero speed");
  Vec3 unit = ds / speed;
  Vec3 v = gs - gt;
  double c2 = v.squaredNorm();
  if (c2 == 0.0) throw DegenerateCurveError("coincident curve points");
  Vec3 proj = v - v.dot(unit) * unit;
  return 2.0 * (2.0 * proj / c2 - kappa_n) * (speed / c2);
}

Vec3 mobius_gradient_field(const SampledCurve& c, double t0, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  double s0r = normalize_param(c, t0);
  double a0 = arc_at(c, s0r);
  double total = c.arclen.back();
  double period = param_period(c);
  double delta = diagonal_halfwidth(c, a0);

  Vec3 gt = position_at(c, s0r);
  check_embedding_at(c, a0, gt, delta);
  Vec3 kappa_n = curvature_vector(c, s0r);
  auto integrand = [&](double s) {
    Vec3 gs = position_at(c, s);
    Vec3 ds = derivative_at(c, s);
    double speed = ds.norm();
    Vec3 unit = ds / speed;
    Vec3 v = gs - gt;
    double c2 = v.squaredNorm();
    double d = intrinsic_distance(c, s, s0r);
    if (std::sqrt(c2) < 1e-9 * d) {
      throw DegenerateCurveError(
          "chord/arc degeneracy: curve nearly self-intersects");
    }
    return Vec3(2.0 * (2.0 * v / c2 - 2.0 * v.dot(unit) / c2 * unit - kappa_n) *
                (speed / c2));
  };

  // Arc offsets available on each side of the cut-out core.
  double x_right = c.closed ? 0.5 * total : total - a0;
  double x_left = c.closed ? 0.5 * total : a0;
  double x_pair = std::min(x_left, x_right);
  if (x_pair <= delta && std::max(x_left, x_right) <= delta) {
    return Vec3::Zero();
  }

  // Virtual parameter of the point at arc offset +x (right) or -x (left).
  auto vparam = [&](double x, bool right) {
    double arc = right ? a0 + x : a0 - x;
    double tr = inverse_arc(c, c.closed ? wrap_arc(c, arc) : arc);
    if (c.closed) {
      if (right && tr < s0r) tr += period;
      if (!right && tr > s0r) tr -= period;
    }
    return tr;
  };

  // Mirrored geometric panels over the paired range, then the one-sided
  // leftover (open curves with an off-center base point).
  struct Panel {
    double a, b;  // virtual parameter interval
  };
  std::vector<std::pair<Panel, Panel>> pairs;
  std::vector<Panel> singles;
  if (x_pair > delta) {
    double e = delta;
    while (e < x_pair) {
      double en = std::min(x_pair, 2.0 * e);
      pairs.push_back({Panel{vparam(e, true), vparam(en, true)},
                       Panel{vparam(en, false), vparam(e, false)}});
      e = en;
    }
  }
  double x_single_lo = std::max(x_pair, delta);
  if (x_right > x_single_lo) {
    double e = x_single_lo;
    while (e < x_right) {
      double en = std::min(x_right, 2.0 * e);
      singles.push_back(Panel{vparam(e, true), vparam(en, true)});
      e = en;
    }
  }
  if (x_left > x_single_lo) {
    double e = x_single_lo;
    while (e < x_left) {
      double en = std::min(x_left, 2.0 * e);
      singles.push_back(Panel{vparam(en, false), vparam(e, false)});
      e = en;
    }
  }

  double measure = 0.0;
  for (const auto& pr : pairs) {
    measure += (pr.first.b - pr.first.a) + (pr.second.b - pr.second.a);
  }
  for (const auto& pn : singles) measure += pn.b - pn.a;
  if (!(measure > 0.0)) return Vec3::Zero();

  Vec3 out = Vec3::Zero();
  for (int comp = 0; comp < 3; ++comp) {
    auto fc = [&](double s) { return integrand(s)[comp]; };
    KahanSum sum;
    for (const auto& pr : pairs) {
      double w = (pr.first.b - pr.first.a) + (pr.second.b - pr.second.a);
      double share = tol * w / measure;
      double right =
          integrate_aligned(c, pr.first.a, pr.first.b, 0.5 * share, fc).value;
      double left =
          integrate_aligned(c, pr.second.a, pr.second.b, 0.5 * share, fc)
              .value;
      sum.add(right + left);
    }
    for (const auto& pn : singles) {
      double share = tol * (pn.b - pn.a) / measure;
      sum.add(integrate_aligned(c, pn.a, pn.b, share, fc).value);
    }
    out[comp] = sum.result();
  }
  return out;
}

SampledCurve read_curve_csv(std::istream& in) {
  std::vector<double> params;
  std::vector<Vec3> points;
  bool closed = false;
  bool header_seen = false;
  std::string line;
  std::size_t lineno = 0;
  auto strip = [](std::string s) {
    std::string out;
    for (char ch : s) {
      if (ch != ' ' && ch != '\t' && ch != '\r') out.push_back(ch);
    }
    return out;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = strip(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      if (s == "#closed=true") closed = true;
      continue;
    }
    if (!header_seen) {
      if (s != "t,x,y,z") {
        throw DomainError("curve CSV: expected header t,x,y,z");
      }
      header_seen = true;
      continue;
    }
    double vals[4];
    const char* ptr = s.data();
    const char* end = s.data() + s.size();
    for (int k = 0; k < 4; ++k) {
      auto res = std::from_chars(ptr, end, vals[k]);
      if (res.ec != std::errc{}) {
        throw DomainError("curve CSV: bad number on line " +
                          std::to_string(lineno));
      }
      ptr = res.ptr;
      if (k < 3) {
        if (ptr == end || *ptr != ',') {
          throw DomainError("curve CSV: expected 4 comma-separated fields "
                            "on line " +
                            std::to_string(lineno));
        }
        ++ptr;
      }
    }
    if (ptr != end) {
      throw DomainError("curve CSV: trailing characters on line " +
                        std::to_string(lineno));
    }
    params.push_back(vals[0]);
    points.emplace_back(vals[1], vals[2], vals[3]);
  }
  if (!header_seen) throw DomainError("curve CSV: missing header t,x,y,z");
  std::size_t n = points.size();
  if (n < 8) throw DegenerateCurveError("curve needs at least 8 samples");

  // Three-point finite-difference tangents on the (possibly nonuniform)
  // grid; closed curves difference across the seam.
  std::vector<Vec3> tangents(n);
  auto fd = [&](const Vec3& pm, const Vec3& pc, const Vec3& pp, double hm,
                double hp) {
    return -hp / (hm * (hm + hp)) * pm +
           (hp - hm) / (hm * hp) * pc +
           hm / (hp * (hm + hp)) * pp;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (closed && (i == 0 || i + 1 == n)) continue;
    if (i == 0) {
      double h0 = params[1] - params[0];
      double h1 = params[2] - params[1];
      tangents[0] = -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * points[0] +
                    (h0 + h1) / (h0 * h1) * points[1] -
                    h0 / (h1 * (h0 + h1)) * points[2];
    } else if (i + 1 == n) {
      double h0 = params[n - 2] - params[n - 3];
      double h1 = params[n - 1] - params[n - 2];
      tangents[n - 1] = h1 / (h0 * (h0 + h1)) * points[n - 3] -
                        (h0 + h1) / (h0 * h1) * points[n - 2] +
                        (2.0 * h1 + h0) / (h1 * (h0 + h1)) * points[n - 1];
    } else {
      tangents[i] = fd(points[i - 1], points[i], points[i + 1],
                       params[i] - params[i - 1], params[i + 1] - params[i]);
    }
  }
  if (closed) {
    double hm = params.back() - params[n - 2];  // seam-adjacent spacings
    double hp = params[1] - params[0];
    tangents[0] = fd(points[n - 2], points[0], points[1], hm, hp);
    tangents[n - 1] = tangents[0];
  }
  return make_curve(std::move(points), std::move(tangents), std::move(params),
                    closed);
}

void write_curve_csv(std::ostream& out, const SampledCurve& c) {
  out << "t,x,y,z\n";
  char buf[160];
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", c.params[i],
                  c.points[i][0], c.points[i][1], c.points[i][2]);
    out << buf;
  }
  if (c.closed) out << "# closed=true\n";
}

}  // namespace helix
