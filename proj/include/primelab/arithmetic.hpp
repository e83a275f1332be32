#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "primelab/sieve.hpp"

namespace primelab {

// Lambda(n): log p if n = p^k (k >= 1), else 0. Throws domain_error for n = 0.
double von_mangoldt(std::uint64_t n);

// Lambda(n) for every n in [lo, hi), index n - lo.
std::vector<double> von_mangoldt_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config = {});

// If n = p^k with p prime and k >= 1, returns p; otherwise 0.
std::uint64_t prime_power_base(std::uint64_t n);

struct PrimeFactor {
  std::uint64_t prime;
  unsigned exponent;
  bool operator==(const PrimeFactor&) const = default;
};

// Trial-division factorization, ascending primes. factorize(1) is empty.
std::vector<PrimeFactor> factorize(std::uint64_t n);
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);
bool is_squarefree(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

// spf[n] = smallest prime factor of n for 2 <= n <= limit (spf[0] = spf[1] = 0).
std::vector<std::uint32_t> smallest_prime_factor_table(std::uint64_t limit);

// True iff n = a^2 + b^2 with a, b >= 0, by the criterion that every prime
// p = 3 (mod 4) divides n to an even power.
bool two_squares_indicator(std::uint64_t n);

// two_squares_indicator for every n in [0, limit], from a smallest-prime-
// factor table; index n.
std::vector<bool> two_squares_table(std::uint64_t limit);

// Visits every n in [lo, hi] divisible by none of `primes`, ascending.
// `primes` need not be materializable as a single integer.
void for_each_coprime(std::span<const std::uint64_t> primes, std::uint64_t lo, std::uint64_t hi,
                      const std::function<void(std::uint64_t)>& fn);

// Ascending n in [1, limit] with gcd(n, q) = 1. Requires q >= 1, limit >= 1.
std::vector<std::uint64_t> reduced_residues(std::uint64_t q, std::uint64_t limit);

// Pull-style stream over the same set as reduced_residues, generated in
// blocks so arbitrarily long ranges stay in bounded memory.
class ReducedResidueStream {
 public:
  ReducedResidueStream(std::uint64_t q, std::uint64_t limit, std::uint64_t block = std::uint64_t{1} << 20);
  explicit ReducedResidueStream(std::vector<std::uint64_t> primes, std::uint64_t limit,
                                std::uint64_t block = std::uint64_t{1} << 20);

  // Returns false when exhausted.
  bool next(std::uint64_t& out);

 private:
  void refill();

  std::vector<std::uint64_t> primes_;
  std::uint64_t limit_;
  std::uint64_t block_;
  std::uint64_t block_lo_ = 1;
  std::vector<std::uint8_t> marks_;
  std::uint64_t cursor_ = 0;
};

}  // namespace primelab
