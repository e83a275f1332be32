#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "primelab/sieve.hpp"

namespace primelab {

// Fixed-edge histogram. Bin i is [edges[i], edges[i+1]).
struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;

  explicit Histogram(std::vector<double> edges);
  // "lo:hi:width", e.g. "0:5:0.25".
  static Histogram parse(std::string_view spec);

  void add(double x);
  std::size_t bins() const noexcept { return counts.size(); }
  double fraction(std::size_t i) const { return total == 0 ? 0.0 : static_cast<double>(counts[i]) / total; }
  // Fraction of samples in [a, b) summed over whole bins; a and b must be edges.
  double fraction_between(double a, double b) const;
};

enum class GapNormalization { log_p, log_index };
std::string to_string(GapNormalization g);
GapNormalization parse_gap_normalization(std::string_view s);

// Gaps p_{n+1} - p_n between consecutive primes <= N divided by log p_n or
// log n. With log_index the n = 1 gap has D = 0 and lands in overflow.
Histogram gap_histogram(std::uint64_t N, std::vector<double> edges, GapNormalization norm = GapNormalization::log_p,
                        const SieveConfig& config = {});

// e^{-a} - e^{-b}.
double exponential_mass(double a, double b);

// Total variation distance between the histogram (including under/overflow
// cells) and the Exp(1) law on the same cells.
double exponential_tv_distance(const Histogram& h);

enum class WindowRule { lambda_log_N, lambda_log_n };
std::string to_string(WindowRule r);
WindowRule parse_window_rule(std::string_view s);

struct WindowDistribution {
  std::vector<std::uint64_t> counts;  // counts[k] = #windows with k primes
  std::uint64_t windows = 0;
  std::uint64_t h = 0;                // fixed width under lambda_log_N
  double lambda = 0.0;
  WindowRule rule = WindowRule::lambda_log_N;
  double frequency(std::size_t k) const {
    return (k < counts.size() && windows > 0) ? static_cast<double>(counts[k]) / windows : 0.0;
  }
};

// Distribution of pi(n + h) - pi(n) over 1 <= n <= N with h = ceil(lambda log N)
// (lambda_log_N) or h = ceil(lambda log n) for 2 <= n <= N (lambda_log_n).
WindowDistribution window_count_distribution(std::uint64_t N, double lambda, WindowRule rule = WindowRule::lambda_log_N,
                                             const SieveConfig& config = {});

// Total variation distance between a window distribution and Poisson(lambda).
double poisson_tv_distance(const WindowDistribution& d, double lambda);

double poisson_pmf(double lambda, std::uint64_t k);
double poisson_cdf(double lambda, std::uint64_t k);

// Kolmogorov distance between Poisson(lambda) and N(lambda, lambda).
// Requires lambda >= 10.
double poisson_normal_check(double lambda);

// Bitmap over [start, start + length) with X(n) = 1 with probability
// 1/log n. Draws depend only on (seed, n), so overlapping samples agree.
struct CramerSample {
  std::uint64_t seed = 0;
  std::uint64_t start = 3;
  std::uint64_t length = 0;
  std::vector<bool> draws;
  std::uint64_t count() const;
};

CramerSample cramer_simulate(std::uint64_t seed, std::uint64_t start, std::uint64_t length);

struct CramerMoment {
  unsigned k = 0;
  double empirical = 0.0;
  // Even k: k!/(2^{k/2}(k/2)!) (h/log N)^{k/2}. Odd k: the scale (h/log N)^{(k-1)/2}.
  double predicted = 0.0;
  // Exact model value of E[S^k] for k <= 4 (from the cumulants); NaN above.
  double exact = 0.0;
  // Standard error of `empirical` estimated from the replicas.
  double std_error = 0.0;
};

struct CramerMomentReport {
  std::uint64_t seed = 0, N = 0, h = 0, replicas = 0;
  std::vector<CramerMoment> moments;
};

// Moments of S = sum_{N < m <= N+h} (X(m) - 1/log m) over independent
// replicas of the window (replica r draws from its own Philox stream).
// Replicas are processed in parallel and reduced in order.
CramerMomentReport cramer_moments(std::uint64_t seed, std::uint64_t N, std::uint64_t h, unsigned k_max,
                                  std::uint64_t replicas, unsigned threads = 0);

}  // namespace primelab
