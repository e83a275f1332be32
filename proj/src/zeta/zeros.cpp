#include <boost/math/special_functions/lambert_w.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "primelab/error.hpp"
#include "primelab/zeta.hpp"

namespace primelab {

namespace {

constexpr double pi = std::numbers::pi;

double refine_root(double lo, double hi, double zlo) {
  std::uintmax_t iters = 100;
  const auto f = [](double t) { return hardy_z(t); };
  const auto tol = [](double a, double b) { return std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)); };
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, zlo, f(hi), tol, iters);
  return 0.5 * (r.first + r.second);
}

struct Sample {
  double t;
  double z;
};

// Collects sign-change brackets among the samples, inserting midpoints
// until `expected` changes are seen or the refinement budget runs out.
std::vector<std::pair<Sample, Sample>> resolve_block(std::vector<Sample> s, long expected) {
  for (int round = 0; round < 12; ++round) {
    std::vector<std::pair<Sample, Sample>> brackets;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if ((s[i].z < 0) != (s[i + 1].z < 0)) brackets.push_back({s[i], s[i + 1]});
    if (static_cast<long>(brackets.size()) >= expected) return brackets;
    std::vector<Sample> finer;
    finer.reserve(2 * s.size());
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      finer.push_back(s[i]);
      const double mid = 0.5 * (s[i].t + s[i + 1].t);
      finer.push_back({mid, hardy_z(mid)});
    }
    finer.push_back(s.back());
    s = std::move(finer);
  }
  throw std::runtime_error("compute_zeros: could not resolve Gram block starting at t = " +
                           std::to_string(s.front().t));
}

}  // namespace

double gram_point(long n) {
  if (n < -1) throw domain_error("gram_point: requires n >= -1");
  const double m = static_cast<double>(n) + 0.125;
  double t = 2.0 * pi * m / boost::math::lambert_w0(m / std::numbers::e);
  for (int i = 0; i < 50; ++i) {
    const double step = (riemann_siegel_theta(t) - n * pi) / (0.5 * std::log(t / (2.0 * pi)));
    t -= step;
    if (std::abs(step) < 1e-14 * t) break;
  }
  return t;
}

std::vector<double> compute_zeros(std::size_t count) {
  std::vector<double> zeros;
  zeros.reserve(count);
  // (-1)^n Z(g_n) > 0 marks a good Gram point; a block between consecutive
  // good points g_j < g_k holds exactly k - j zeros (Rosser's rule, which
  // holds far past the heights reached here).
  const auto good = [](long n, double z) { return (n % 2 == 0) ? z > 0 : z < 0; };
  long j = -1;
  Sample start{gram_point(j), 0.0};
  start.z = hardy_z(start.t);
  if (!good(j, start.z)) throw std::runtime_error("compute_zeros: g_{-1} is not a good Gram point");
  while (zeros.size() < count) {
    std::vector<Sample> block{start};
    long k = j;
    for (;;) {
      ++k;
      const double g = gram_point(k);
      block.push_back({g, hardy_z(g)});
      if (good(k, block.back().z)) break;
      if (k - j > 1000) throw std::runtime_error("compute_zeros: runaway Gram block");
    }
    for (const auto& [a, b] : resolve_block(block, k - j)) zeros.push_back(refine_root(a.t, b.t, a.z));
    j = k;
    start = block.back();
  }
  zeros.resize(count);
  return zeros;
}

bool hardy_z_sign_change(double gamma, double delta) {
  if (!(gamma - delta > 0.0)) return false;
  return (hardy_z(gamma - delta) < 0) != (hardy_z(gamma + delta) < 0);
}

}  // namespace primelab
