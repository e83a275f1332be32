#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "primelab/numeric.hpp"

namespace primelab {

// A finite set of distinct nonnegative offsets, kept sorted.
class TupleSet {
 public:
  TupleSet() = default;
  // Sorts the input; throws precondition_error on duplicates or negatives.
  explicit TupleSet(std::vector<std::int64_t> offsets);
  TupleSet(std::initializer_list<std::int64_t> offsets) : TupleSet(std::vector<std::int64_t>(offsets)) {}

  // Comma-separated offsets, e.g. "0,2,6". Throws precondition_error.
  static TupleSet parse(std::string_view text);

  const std::vector<std::int64_t>& offsets() const noexcept { return h_; }
  std::size_t size() const noexcept { return h_.size(); }
  bool empty() const noexcept { return h_.empty(); }
  std::int64_t span() const noexcept { return h_.empty() ? 0 : h_.back() - h_.front(); }
  std::int64_t max() const noexcept { return h_.empty() ? 0 : h_.back(); }

  TupleSet shifted(std::int64_t c) const;
  // Translate so the smallest offset is 0.
  TupleSet normalized() const { return empty() ? *this : shifted(-h_.front()); }
  // Subset selected by the bits of `mask` (bit i keeps offsets()[i]).
  TupleSet subset(std::uint32_t mask) const;

  bool operator==(const TupleSet&) const = default;

 private:
  std::vector<std::int64_t> h_;
};

struct SingularValue {
  double value = 1.0;
  std::uint64_t prime_cutoff = 0;
  // Bound on |true / value - 1| from the primes above the cutoff.
  double tail_bound = 0.0;
  bool vanishes = false;
};

inline constexpr std::uint64_t kDefaultSingularCutoff = 1'000'000;
inline constexpr std::uint64_t kBulkSingularCutoff = 10'000;

// Number of residue classes mod p occupied by H. Throws domain_error for empty H.
std::uint64_t nu(const TupleSet& H, std::uint64_t p);

// (1 - nu/p)(1 - 1/p)^{-k}.
double local_factor(const TupleSet& H, std::uint64_t p);

// Euler product over p <= prime_cutoff with a certified tail bound.
// Requires prime_cutoff > span(H) and prime_cutoff > |H|.
SingularValue singular_series(const TupleSet& H, std::uint64_t prime_cutoff = kDefaultSingularCutoff);

// S({0, l}) truncated at prime_cutoff, via the factorization of l. Unlike
// singular_series there is no requirement that the cutoff exceed l.
double singular_series_pair(std::uint64_t l, std::uint64_t prime_cutoff = kDefaultSingularCutoff);

// Product over p | q of (p - nu(p)). Throws domain_error if q is not squarefree.
std::uint64_t pattern_count_mod(const TupleSet& H, std::uint64_t q);

// Product over p | q of local_factor(H, p).
double s_factor_mod(const TupleSet& H, std::uint64_t q);

// Alternating subset sum S0(H) = sum_{J subset H} (-1)^{|H|-|J|} S(J).
// Throws capacity_error for |H| > 20.
double s0_transform(const TupleSet& H, std::uint64_t prime_cutoff = kDefaultSingularCutoff);

struct GallagherResult {
  double sum_S = 0.0;
  std::uint64_t count = 0;
  double ratio = 0.0;
  // Absolute bound on the error of sum_S from Euler-product truncation.
  double tail_bound = 0.0;
};

// Sum of S over all k-subsets of {1, ..., h}. Requires 1 <= k <= h and
// C(h, k) <= 1e8.
GallagherResult gallagher_average(unsigned k, std::uint64_t h, std::uint64_t prime_cutoff = kBulkSingularCutoff,
                                  unsigned threads = 0);

struct PairSumExpansion {
  double exact = 0.0;      // sum_{l <= h} S({0, l}) (h - l)
  double predicted = 0.0;  // h^2/2 - h log h / 2 + B h / 2
};

PairSumExpansion pair_sum_expansion(std::uint64_t h, std::uint64_t prime_cutoff = kDefaultSingularCutoff);

// G(s) = prod_p (1 - 1/(p-1)^2 + p^{1-s} / (p-1)^2), truncated; G(1) = 1.
complex dirichlet_G(complex s, std::uint64_t prime_cutoff);
// H(s) = G(s) / zeta(s + 1) as its own Euler product, truncated.
complex dirichlet_H(complex s, std::uint64_t prime_cutoff);

struct DirichletF {
  complex series;   // sum_{l <= term_cutoff} S({0, l}) l^{-s}; NaN when Re s <= 1
  complex product;  // zeta(s) G(s)
  // Heuristic size of the dropped series terms, term_cutoff^{1-sigma}/(sigma-1).
  double series_tail = 0.0;
  // Bound on |truncated G / G - 1| (valid for Re s >= 1, else NaN).
  double product_tail = 0.0;
};

// F(s) = sum S({0, l}) l^{-s} two ways. Throws pole_error at s = 1 and
// domain_error for Re s <= 0.
DirichletF dirichlet_F(complex s, std::uint64_t term_cutoff, std::uint64_t prime_cutoff);

}  // namespace primelab
