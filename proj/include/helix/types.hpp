#pragma once

#include <cmath>
#include <complex>

#include "helix/errors.hpp"

namespace helix {

using Complex = std::complex<double>;

// Validated pitch parameter rho > 0 of the unit-radius helix
// t -> (cos t, sin t, rho t).
class Pitch {
 public:
  explicit Pitch(double rho) : rho_(rho) {
    if (!std::isfinite(rho) || rho <= 0.0) {
      throw DomainError("pitch must be finite and positive");
    }
  }
  double value() const noexcept { return rho_; }

 private:
  double rho_;
};

enum class Method {
  quadrature,      // adaptive real-line integration of the density
  residue_series,  // series over refined pole locations
  approx_series,   // closed-form series over approximate pole locations
};

const char* method_name(Method m) noexcept;

// A computed value of the rescaled energy integral, together with the bound
// on mass omitted by truncation and the accuracy the computation certifies.
// Invariants: tail_bound >= 0 and tail_bound <= tolerance.
struct EnergyEstimate {
  Pitch rho;
  double value;
  Method method;
  double tail_bound;
  double tolerance;
};

// Truncation plan for an infinite series: sum k = 1..cutoff; the discarded
// remainder is certified to be below tail_bound.
struct SeriesTruncation {
  long cutoff;
  double tail_bound;
};

}  // namespace helix
