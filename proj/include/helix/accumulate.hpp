#pragma once

#include <complex>

namespace helix {

// Kahan compensated accumulator. Addition order is fixed by the caller, so
// results are bit-identical across runs.
template <class V>
class KahanAccumulator {
 public:
  void add(V x) {
    V y = x - c_;
    V t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  V result() const { return sum_; }

 private:
  V sum_{};
  V c_{};
};

using KahanSum = KahanAccumulator<double>;
using KahanSumComplex = KahanAccumulator<std::complex<double>>;

}  // namespace helix
