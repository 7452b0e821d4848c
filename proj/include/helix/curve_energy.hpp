#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "helix/types.hpp"

namespace helix {

using Vec3 = Eigen::Vector3d;

// Cubic-Hermite sampled curve. params are strictly increasing; a closed
// curve carries its duplicated endpoint (last sample equals the first, one
// period later). arclen/arc_slope cache the cumulative arclength at the
// knots and the monotonicity-limited interpolation slopes.
struct SampledCurve {
  std::vector<Vec3> points;
  std::vector<Vec3> tangents;
  std::vector<double> params;
  bool closed = false;
  std::vector<double> arclen;
  std::vector<double> arc_slope;
};

// Validates (at least 8 samples, strictly increasing params, nonzero
// tangents, coincident endpoints when closed) and builds the arclength
// cache.
SampledCurve make_curve(std::vector<Vec3> points, std::vector<Vec3> tangents,
                        std::vector<double> params, bool closed);

// Helix t -> (cos t, sin t, rho t) sampled on [-T, T] with spacing graded
// away from t = 0: h(t) ~ clamp(alpha |t|, h_min, h_max).
SampledCurve helix_curve(const Pitch& rho, double T, double alpha = 4e-3,
                         double h_min = 2e-3, double h_max = 0.5);

// Closed circle of the given radius in the xy-plane, n uniform samples.
SampledCurve circle_curve(double radius, long n);

Vec3 curve_position(const SampledCurve& c, double t);
Vec3 curve_derivative(const SampledCurve& c, double t);

double total_length(const SampledCurve& c);
double curve_arclength(const SampledCurve& c, double t);
double param_at_arclength(const SampledCurve& c, double s);

// Intrinsic distance: |A(t) - A(s)|, or the shorter arc when closed.
double intrinsic_distance(const SampledCurve& c, double s, double t);

struct EnergyDensityValue {
  double s;      // parameter the density was evaluated at
  double value;  // nonnegative
  double j, p;   // exponents, both >= 1
};

// Pointwise O'Hara (j, p) energy density at parameter s0:
//   integral of (1/|c(t,s0)|^j - 1/D(t,s0)^j)^p |gamma'(t)| dt
// over the sampled domain, with the diagonal neighbourhood |D| < delta
// replaced by the local curvature model (j kappa^2/24)^p D^{(2-j)p}.
// delta is a fixed multiple of the local sample spacing.
EnergyDensityValue pointwise_energy(const SampledCurve& c, double s0,
                                    double j = 2.0, double p = 1.0,
                                    double tol = 1e-8);

// Total O'Hara energy: integral of the pointwise density against the
// arclength element.
double total_energy(const SampledCurve& c, double j = 2.0, double p = 1.0,
                    double tol = 1e-6);

// Energy of the helix segment captured by the cylinder |z| <= N: the
// double integral of M_rho(t - s) over [-N/rho, N/rho]^2, reduced exactly
// to a single integral of M_rho against the tent weight.
double truncated_helix_energy(const Pitch& rho, double N, double tol = 1e-8);

// First-variation integrand at (t0, s), including the leading factor 2:
//   2 [ 2 proj_{T(s) perp}(gamma(s)-gamma(t0)) / c^2 - kappa N(t0) ]
//     |gamma'(s)| / c^2.
Vec3 mobius_gradient_integrand(const SampledCurve& c, double t0, double s);

// Principal-value field: the integrand above integrated over the curve
// minus the symmetric core |D(s,t0)| < delta_pv (a fixed multiple of the
// local sample spacing), with mirrored panels summed pairwise.
Vec3 mobius_gradient_field(const SampledCurve& c, double t0,
                           double tol = 1e-6);

// Curvature vector kappa N at parameter t (finite differences over the
// Hermite interpolant).
Vec3 curvature_vector(const SampledCurve& c, double t);

// CSV exchange: required header "t,x,y,z", one row per sample, optional
// metadata line "# closed=true". Tangents are reconstructed by three-point
// finite differences on the sample grid.
SampledCurve read_curve_csv(std::istream& in);
void write_curve_csv(std::ostream& out, const SampledCurve& c);

}  // namespace helix
