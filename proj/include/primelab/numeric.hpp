#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace primelab {

using complex = std::complex<double>;

// Neumaier's variant of Kahan summation. Long Lambda/log sums over 1e8+
// terms lose several digits with naive accumulation.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  CompensatedSum& operator+=(const CompensatedSum& o) noexcept {
    add(o.sum_);
    add(o.comp_);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(complex z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  CompensatedComplexSum& operator+=(complex z) noexcept {
    add(z);
    return *this;
  }
  complex value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// B = 1 - gamma - log(2 pi), the constant in the pair-correlation
// expansion of the twin singular series average.
inline double hl_constant_B() {
  return 1.0 - std::numbers::egamma - std::log(2.0 * std::numbers::pi);
}

inline double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Adaptive Gauss-Kronrod (G7/K15) integration of f on [a, b].
// Returns the integral; abs_error (if given) receives the estimate.
double integrate(const auto& f, double a, double b, double rel_tol = 1e-13,
                 double* abs_error = nullptr);

}  // namespace primelab

#include "primelab/detail/quadrature_impl.hpp"
