#include "primelab/summatory.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <cmath>

#include "primelab/error.hpp"
#include "primelab/numeric.hpp"

namespace primelab {

SummatorySnapshot summatory(std::uint64_t x, const SieveConfig& config) {
  SummatorySnapshot snap;
  snap.x = x;
  if (x < 2) return snap;
  CompensatedSum theta;
  std::uint64_t pi = 0;
  for_each_prime(
      2, x + 1,
      [&](std::uint64_t p) {
        ++pi;
        theta += std::log(static_cast<double>(p));
      },
      config);
  // psi adds log p once more for every p^k <= x with k >= 2.
  CompensatedSum psi = theta;
  for (const std::uint64_t p : primes_up_to(isqrt(x))) {
    const double lp = std::log(static_cast<double>(p));
    for (unsigned __int128 q = static_cast<unsigned __int128>(p) * p; q <= x; q *= p) psi += lp;
  }
  snap.pi_x = pi;
  snap.theta_x = theta.value();
  snap.psi_x = psi.value();
  return snap;
}

namespace {

double li2() {
  static const double value = boost::math::expint(std::log(2.0));
  return value;
}

}  // namespace

double log_integral(double x) {
  if (!(x >= 2.0)) throw domain_error("log_integral: x must be >= 2");
  if (x == 2.0) return li2();
  return boost::math::expint(std::log(x));
}

double log_power_integral(double x, int k) {
  if (!(x >= 2.0)) throw domain_error("log_power_integral: x must be >= 2");
  if (k < 1) throw domain_error("log_power_integral: k must be >= 1");
  if (x == 2.0) return 0.0;
  // t = e^u turns the integrand into the smooth e^u / u^k.
  return integrate([k](double u) { return std::exp(u) * std::pow(u, -k); }, std::log(2.0), std::log(x),
                   1e-13);
}

}  // namespace primelab
