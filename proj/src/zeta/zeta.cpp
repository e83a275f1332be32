#include "primelab/zeta.hpp"

#include <array>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <cmath>
#include <numbers>

#include "primelab/error.hpp"

namespace primelab {

namespace {

constexpr double pi = std::numbers::pi;

// Below this height Euler-Maclaurin on the line beats the truncated
// Riemann-Siegel expansion (error ~1e-9 near t = 200, ~1e-12 at 1500).
constexpr double kRiemannSiegelFrom = 1500.0;

#include "riemann_siegel_coeffs.inc"

// Borwein's algorithm 2 for eta(s); error ~ (3 + sqrt 8)^{-n} e^{pi |t| / 2}.
complex eta_borwein(complex s) {
  const double t = std::abs(s.imag());
  const int n = static_cast<int>((pi * t / 2.0 + 40.0) / std::log(3.0 + std::sqrt(8.0))) + 8;
  std::vector<double> d(n + 1);
  double term = 1.0 / n;  // i = 0 term of n sum (n+i-1)! 4^i / ((n-i)! (2i)!)
  double acc = term;
  d[0] = n * acc;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i - 1) * (2.0 * i));
    acc += term;
    d[i] = n * acc;
  }
  CompensatedComplexSum sum;
  for (int k = 0; k < n; ++k) {
    const double w = (d[k] - d[n]) / d[n];
    const complex v = w * std::exp(-s * std::log(static_cast<double>(k + 1)));
    sum += (k % 2 == 0) ? v : -v;
  }
  return -sum.value();
}

}  // namespace

complex zeta_eta(complex s) {
  if (!(s.real() > 0.0)) throw domain_error("zeta_eta: requires Re s > 0");
  const complex denom = 1.0 - std::exp((1.0 - s) * std::log(2.0));
  if (std::abs(denom) < 1e-3) throw domain_error("zeta_eta: 1 - 2^{1-s} too close to 0");
  return eta_borwein(s) / denom;
}

complex zeta_euler_maclaurin(complex s) {
  if (s == complex(1.0, 0.0)) throw pole_error("zeta: pole at s = 1");
  const double mag = std::abs(s);
  const int N = static_cast<int>(std::ceil((mag + 40.0) / (2.0 * pi) * 1.5)) + 5;
  CompensatedComplexSum sum;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double logN = std::log(static_cast<double>(N));
  const complex Ns = std::exp(-s * logN);  // N^{-s}
  sum += Ns * static_cast<double>(N) / (s - 1.0);
  sum += 0.5 * Ns;
  // sum_k B_{2k} / (2k)! * s (s+1) ... (s+2k-2) * N^{-s-2k+1}
  complex rising = s;  // s (s+1) ... (s+2k-2)
  complex power = Ns / static_cast<double>(N);
  double prev = INFINITY;
  for (int k = 1; k <= 30; ++k) {
    const complex term = boost::math::bernoulli_b2n<double>(k) /
                         boost::math::factorial<double>(2 * k) * rising * power;
    const double size = std::abs(term);
    if (size > prev) break;  // asymptotic series started to diverge
    sum += term;
    prev = size;
    if (size < 1e-18 * std::abs(sum.value())) break;
    rising *= (s + (2.0 * k - 1)) * (s + 2.0 * k);
    power /= static_cast<double>(N) * N;
  }
  return sum.value();
}

complex zeta(complex s) {
  if (s == complex(1.0, 0.0)) throw pole_error("zeta: pole at s = 1");
  const double sigma = s.real();
  if (sigma > 0.0 && sigma <= 2.0 && std::abs(s.imag()) <= 100.0) {
    const complex denom = 1.0 - std::exp((1.0 - s) * std::log(2.0));
    if (std::abs(denom) > 0.1) return eta_borwein(s) / denom;
  }
  return zeta_euler_maclaurin(s);
}

complex log_gamma(complex z) {
  if (!(z.real() > 0.0)) throw domain_error("log_gamma: requires Re z > 0");
  // Shift to Re z >= 15, then Stirling with Bernoulli corrections.
  complex shift = 0.0;
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  complex r = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi);
  const complex inv = 1.0 / z, inv2 = inv * inv;
  complex p = inv;
  for (int k = 1; k <= 10; ++k) {
    r += boost::math::bernoulli_b2n<double>(k) / (2.0 * k * (2.0 * k - 1)) * p;
    p *= inv2;
  }
  return r - shift;
}

double riemann_siegel_theta(double t) {
  if (!(t > 0.0)) throw domain_error("riemann_siegel_theta: requires t > 0");
  if (t >= 200.0) {
    const double it = 1.0 / t, it2 = it * it;
    return t / 2.0 * std::log(t / (2.0 * pi)) - t / 2.0 - pi / 8.0 +
           it * (1.0 / 48.0 + it2 * (7.0 / 5760.0 + it2 * (31.0 / 80640.0 + it2 * 127.0 / 430080.0)));
  }
  return log_gamma(complex(0.25, t / 2.0)).imag() - t / 2.0 * std::log(pi);
}

double hardy_z(double t) {
  if (!(t > 0.0)) throw domain_error("hardy_z: requires t > 0");
  const double th = riemann_siegel_theta(t);
  if (t < kRiemannSiegelFrom) {
    const complex v = std::exp(complex(0.0, th)) * zeta_euler_maclaurin(complex(0.5, t));
    return v.real();
  }
  const double a = std::sqrt(t / (2.0 * pi));
  const auto N = static_cast<long>(a);
  CompensatedSum main;
  for (long n = 1; n <= N; ++n) {
    const double ln = std::log(static_cast<double>(n));
    main += std::cos(th - t * ln) / std::sqrt(static_cast<double>(n));
  }
  const double x = (a - static_cast<double>(N)) - 0.5;
  double corr = 0.0, apow = 1.0;
  for (int k = 0; k < 5; ++k) {
    double ck = 0.0;
    for (int i = kRsTerms - 1; i >= 0; --i) ck = ck * x + kRsCoeffs[k][i];
    corr += ck * apow;
    apow /= a;
  }
  const double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  return 2.0 * main.value() + sign * corr / std::sqrt(a);
}

}  // namespace primelab
