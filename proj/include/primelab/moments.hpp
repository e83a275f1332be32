#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "primelab/sieve.hpp"
#include "primelab/singular.hpp"

namespace primelab {

// #{1 <= n <= x : n + h prime for every h in H}.
std::uint64_t tuple_count(const TupleSet& H, std::uint64_t x, const SieveConfig& config = {});

struct HLPrediction {
  double singular = 0.0;
  double literal = 0.0;   // S(H) x / (log x)^k
  double integral = 0.0;  // S(H) * int_2^x dt / (log t)^k
  bool vanishes = false;
};

// Requires x >= 3 and a nonempty H.
HLPrediction hl_prediction(const TupleSet& H, std::uint64_t x, std::uint64_t prime_cutoff = kDefaultSingularCutoff);

// sum_{n <= x} prod_{h in H} Lambda(n + h).
double lambda_tuple_sum(const TupleSet& H, std::uint64_t x, const SieveConfig& config = {});

struct MomentReport {
  unsigned r = 0;
  std::uint64_t N = 0;
  std::uint64_t h = 0;
  double empirical = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;       // empirical / predicted, NaN when predicted == 0
  double normalized = 0.0;  // empirical / (h log(N/h))^{r/2}
  std::vector<std::pair<std::string, double>> pieces;

  double piece(const std::string& name) const;
};

// (1/N) sum_{n <= N} (psi(n+h) - psi(n) - h)^2 against h(log(N/h) + B - 1),
// with the Cramer value h log N reported as a piece.
MomentReport psi_window_variance(std::uint64_t N, std::uint64_t h, const SieveConfig& config = {});

// r-th moment of psi(n+h) - psi(n) - h. Even r: predicted is the Gaussian
// moment (r-1)!! (h log(N/h))^{r/2}; odd r: predicted is 0 and `normalized`
// carries the size. The refined Gaussian value with variance
// h(log(N/h) + B - 1) is reported as a piece.
MomentReport psi_window_moment(std::uint64_t N, std::uint64_t h, unsigned r, const SieveConfig& config = {});

// All moments 1..r_max from a single scan.
std::vector<MomentReport> psi_window_moments(std::uint64_t N, std::uint64_t h, unsigned r_max,
                                             const SieveConfig& config = {});

// Number of maps from an r-set onto a k-set.  Requires 1 <= k <= r <= 20.
unsigned __int128 surjection_count(unsigned r, unsigned k);
std::string to_string(unsigned __int128 v);

struct MomentDecomposition {
  unsigned r = 0;
  std::uint64_t N = 0, h = 0;
  // Window prime counts c(n) = pi(n+h) - pi(n), n <= N.
  double direct_count = 0.0;         // (1/N) sum c(n)^r
  double reconstructed_count = 0.0;  // sum_k sigma(r,k) sum_{h_1<..<h_k} (1/N) #{n: all prime}
  std::vector<double> count_terms;   // k-th term of the reconstruction, index k-1
  // Centered weights Lambda_0 = Lambda - 1.
  double direct_lambda0 = 0.0;         // (1/N) sum (sum_{l<=h} Lambda_0(n+l))^r
  double reconstructed_lambda0 = 0.0;  // multinomial expansion over distinct offsets
};

// Requires 1 <= r <= 6 and N <= 1e7; throws capacity_error if the
// expansion would need more than 2e8 inner terms.
MomentDecomposition moment_decomposition(std::uint64_t N, std::uint64_t h, unsigned r);

struct DistinctSum {
  double exact = 0.0;
  double predicted = 0.0;
  double scale = 0.0;       // (h log h)^{k/2}
  double tail_bound = 0.0;  // absolute bound from Euler-product truncation
};

// sum over ordered k-tuples of distinct h_i in [1, h] of S0(H), against
// (k-1)!! (-h log h + (B+1) h)^{k/2} for even k and 0 for odd k.
// Requires k in {2, 3}; h <= 1e4 (k = 2) or h <= 1e3 (k = 3).
DistinctSum s0_distinct_sum(unsigned k, std::uint64_t h, std::uint64_t prime_cutoff = kBulkSingularCutoff);

// Same tuples with S(H), against h^k - C(k,2) h^{k-1} log h + C(k,2) B h^{k-1}.
DistinctSum distinct_tuple_sum(unsigned k, std::uint64_t h, std::uint64_t prime_cutoff = kBulkSingularCutoff);

}  // namespace primelab
