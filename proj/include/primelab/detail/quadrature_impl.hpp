#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace primelab {

double integrate(const auto& f, double a, double b, double rel_tol, double* abs_error) {
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 18, rel_tol, &err);
  if (abs_error != nullptr) *abs_error = err;
  return value;
}

}  // namespace primelab
