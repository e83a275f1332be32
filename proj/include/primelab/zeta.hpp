#pragma once

#include <cstddef>
#include <vector>

#include "primelab/numeric.hpp"

namespace primelab {

// Riemann zeta on C \ {1}. Picks the alternating (eta) series in the strip
// 0 < Re s <= 2 for moderate heights and Euler-Maclaurin elsewhere.
// Throws pole_error at s = 1.
complex zeta(complex s);

// The two evaluation paths, exposed so they can be checked against each
// other. zeta_eta requires 0 < Re s and 2^{1-s} != 1.
complex zeta_eta(complex s);
complex zeta_euler_maclaurin(complex s);

// log Gamma(z) for Re z > 0, continuous in Im z (no branch jumps).
complex log_gamma(complex z);

// Riemann-Siegel theta: arg Gamma(1/4 + it/2) - (t/2) log pi, t > 0.
double riemann_siegel_theta(double t);

// Hardy's function Z(t) = e^{i theta(t)} zeta(1/2 + it), real for real t.
// Riemann-Siegel formula with four correction terms for t >= 1500,
// Euler-Maclaurin below.
double hardy_z(double t);

// Gram point g_n: theta(g_n) = n pi, for n >= -1.
double gram_point(long n);

// The first `count` positive zero ordinates, ascending, found by Gram
// blocks and Rosser's rule, then bracketed root refinement. Throws
// std::runtime_error if a block cannot be resolved.
std::vector<double> compute_zeros(std::size_t count);

// True when Z changes sign on [gamma - delta, gamma + delta].
bool hardy_z_sign_change(double gamma, double delta = 1e-6);

}  // namespace primelab
