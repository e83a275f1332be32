#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "primelab/gaps.hpp"
#include "primelab/numeric.hpp"

namespace primelab {

// A squarefree modulus P held as its prime set. P itself is only formed on
// request, since the interesting moduli overflow 64 bits.
struct FactoredModulus {
  std::vector<std::uint64_t> primes;  // distinct, ascending
  double log_P = 0.0;
  double phi_ratio = 1.0;             // prod (1 - 1/p)
  std::uint64_t divisor_count = 1;    // 2^m, saturated at 2^63
  bool divisor_count_saturated = false;

  // Validates primality and distinctness; throws precondition_error.
  static FactoredModulus from_primes(std::vector<std::uint64_t> primes);
  std::size_t size() const noexcept { return primes.size(); }
  // P when it fits below 2^63.
  std::optional<std::uint64_t> value() const;
};

// Primes p with lo <= p < hi. Requires 2 <= lo < hi; throws on an empty set.
FactoredModulus build_modulus_interval(std::uint64_t lo, std::uint64_t hi);

// From each block (2^-j y, 2^{1-j} y], 1 <= j <= floor(log y / (2 log 2)),
// keeps ceil(half) of the primes chosen uniformly without replacement.
// Requires y >= 16.
FactoredModulus build_modulus_dyadic_half(double y, std::uint64_t seed);

// #{1 <= j <= h : (j, P) = 1}, exact.
std::uint64_t coprime_count(const FactoredModulus& P, std::uint64_t h);

// y^{-u} (#{n <= y^u : (n, P) = 1} - [y^u] phi(P)/P). Requires u > 0 and
// y^u <= 1e10.
double E_u(const FactoredModulus& P, double y, double u);

struct EScanPoint {
  double u = 0.0;
  double E = 0.0;
  double ie_bound = 0.0;  // d(P) y^{-u}
  double envelope = 0.0;  // exp(-u (log u + log log u)) for u > e, NaN below
};

struct EScan {
  std::vector<EScanPoint> points;
  std::size_t positive = 0, negative = 0;
  double u_limit = 0.0;  // largest u with y^u <= 1e10
  bool truncated = false;
  bool both_signs() const noexcept { return positive > 0 && negative > 0; }
};

// E(u) on u_lo, u_lo + step, ... <= u_hi, stopping where y^u exceeds 1e10.
EScan scan_E_u(const FactoredModulus& P, double y, double u_lo = 1.0, double u_hi = 6.0, double step = 0.05);

// zeta(s) prod_{p | P} (1 - p^{-s}).  Requires Re s > 0; pole_error at s = 1.
complex zeta_P(complex s, const FactoredModulus& P);

struct ZetaPIdentityCheck {
  complex lhs;       // zeta_P(s)
  complex rhs;       // zeta(s) phi(P)/P + s log y int_0^{U} E(u) y^{-u(s-1)} du
  double gap = 0.0;  // |lhs - rhs|
  double tail_bound = 0.0;  // bound on the omitted part u > U from |E(u)| <= d(P) y^{-u}
  double U_max = 0.0;
  std::uint64_t terms = 0;
};

// The integral is summed exactly: E is piecewise constant in z = y^u.
// Throws precondition_error if y^U_max > 1e8 or the tail bound exceeds
// `tolerance`.
ZetaPIdentityCheck zeta_p_identity_check(complex s, const FactoredModulus& P, double y, double U_max,
                                   double tolerance = 1e-2);

struct MaierMatrix {
  std::uint64_t P = 0, h = 0, rows = 0;  // rows = [x/P]
  std::uint64_t x_scale = 0;
  std::vector<std::uint64_t> row_counts;     // primes in ((rows + i) P, (rows + i) P + h], i = 1..rows
  std::vector<std::uint64_t> column_counts;  // primes among ((rows + i) P + j), j = 1..h
  std::uint64_t row_total = 0, column_total = 0;
  std::uint64_t coprime_columns = 0;         // #{j <= h : (j, P) = 1}
  double row_prediction = 0.0;               // (x/P) h / log x
  double column_prediction = 0.0;            // (x / phi(P)) coprime_columns / log x
  double row_ratio = 0.0, column_ratio = 0.0;
};

// Requires P below 2^63 and 2 x + h within sieve capacity.
MaierMatrix maier_matrix(std::uint64_t x_scale, const FactoredModulus& P, std::uint64_t h);

struct InclusionExclusionDemo {
  double lhs_coeff = 0.0;  // 1 - log(10/9) + log^2(10/9) / 2
  double rhs_coeff = 0.0;  // 9/10
  double difference = 0.0;
};

InclusionExclusionDemo inclusion_exclusion_demo();

enum class SequenceKind { ones, primes, two_squares, custom };
std::string to_string(SequenceKind k);
SequenceKind parse_sequence_kind(const std::string& s);

// Nonnegative weights a(n) with a multiplicative density h given on prime
// powers.
class ArithSequence {
 public:
  using weight_fn = std::function<double(std::uint64_t)>;
  using density_fn = std::function<double(std::uint64_t p, unsigned k)>;

  static ArithSequence ones();
  static ArithSequence primes();
  // h(p^k) = 1 for p^k = 1 mod 4, 1/p for p^k = 3 mod 4, and h(2^k) = 1.
  static ArithSequence two_squares();
  static ArithSequence custom(weight_fn a, density_fn h);
  static ArithSequence of_kind(SequenceKind k);

  SequenceKind kind() const noexcept { return kind_; }
  double density(std::uint64_t d) const;  // h(d), multiplicative
  double density_prime_power(std::uint64_t p, unsigned k) const { return h_(p, k); }
  // a(n) for 0 <= n <= x.
  std::vector<double> weights(std::uint64_t x) const;

 private:
  SequenceKind kind_ = SequenceKind::custom;
  weight_fn a_;
  density_fn h_;
};

// A(x), A_d(x) and A(x; q, a) computed exactly from materialized weights.
class SequenceTable {
 public:
  // Requires 1 <= x <= 1e8.
  SequenceTable(const ArithSequence& seq, std::uint64_t x);
  std::uint64_t x() const noexcept { return x_; }
  double summatory() const { return total_; }
  double prefix(std::uint64_t n) const;  // A(n) for n <= x
  double multiples(std::uint64_t d) const;
  double progression(std::uint64_t q, std::uint64_t a) const;

 private:
  std::uint64_t x_;
  double total_ = 0.0;
  std::vector<double> a_;
};

double sequence_summatory(const ArithSequence& seq, std::uint64_t x);
double sequence_multiples(const ArithSequence& seq, std::uint64_t d, std::uint64_t x);
double sequence_progression(const ArithSequence& seq, std::uint64_t q, std::uint64_t a, std::uint64_t x);

struct DiscrepancyReport {
  enum class Scale { interval, progression };
  Scale scale = Scale::progression;
  std::string parameters;
  bool has_prediction = true;
  std::string note;  // why a prediction is missing
  double observed = 0.0;
  double predicted = 0.0;
  double relative_deviation = 0.0;  // |obs - pred| / max(pred, epsilon)
  double empirical_share = 0.0;     // observed / A(x), never labeled a prediction
  static constexpr double epsilon = 1e-30;
};

// observed A(x + y) - A(x) against y A(x) / x. Requires x + y <= table.x().
DiscrepancyReport interval_report(const SequenceTable& t, std::uint64_t x, std::uint64_t y);
// observed A_d(x) against h(d) A(x) / d.
DiscrepancyReport multiples_report(const ArithSequence& seq, const SequenceTable& t, std::uint64_t d);
// observed A(x; q, a) against f_q(a) A(x) / (q gamma_q). Only ones and
// primes carry f_q; other kinds return has_prediction = false.
DiscrepancyReport progression_report(const ArithSequence& seq, const SequenceTable& t, std::uint64_t q,
                                     std::uint64_t a);

// Gaps between consecutive reduced residues mod q over one period (the
// wrap-around gap included), scaled by phi(q)/q. Requires 2 <= q <= 1e9.
Histogram residue_gap_distribution(std::uint64_t q, std::vector<double> edges);
// The raw gaps, for small q (q <= 1e7).
std::vector<std::uint64_t> residue_gaps(std::uint64_t q);

struct MvMoment {
  std::uint64_t q = 0, h = 0;
  unsigned k = 0;
  double direct = 0.0;  // sum_{n <= q} (c(n) - h phi(q)/q)^k
  double oracle = 0.0;  // k = 2, squarefree q: sum prod (p - nu) - (h phi(q))^2 / q; NaN otherwise
  bool has_oracle = false;
};

// Requires q <= 1e6, 1 <= k <= 4, h >= 1.
MvMoment mv_moment(std::uint64_t q, std::uint64_t h, unsigned k);

}  // namespace primelab
