#pragma once

#include <cstdint>

#include "primelab/sieve.hpp"

namespace primelab {

// Chebyshev-type summatory functions at a single point.
struct SummatorySnapshot {
  std::uint64_t x = 0;
  std::uint64_t pi_x = 0;  // #{p <= x}
  double theta_x = 0.0;    // sum_{p <= x} log p
  double psi_x = 0.0;      // sum_{n <= x} Lambda(n)
};

// Exact pi, theta, psi at x by streamed sieving with compensated sums.
SummatorySnapshot summatory(std::uint64_t x, const SieveConfig& config = {});

// li(x) = li(2) + int_2^x dt / log t, relative error below 1e-10.
// Throws domain_error for x < 2.
double log_integral(double x);

// int_2^x dt / (log t)^k by adaptive quadrature (k >= 1, x >= 2).
double log_power_integral(double x, int k);

}  // namespace primelab
