#include "primelab/maier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "primelab/arithmetic.hpp"
#include "primelab/error.hpp"
#include "primelab/random.hpp"
#include "primelab/sieve.hpp"
#include "primelab/zeta.hpp"

namespace primelab {

namespace {

constexpr double kCountLimit = 1e10;

}  // namespace

FactoredModulus FactoredModulus::from_primes(std::vector<std::uint64_t> primes) {
  std::sort(primes.begin(), primes.end());
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
    throw precondition_error("FactoredModulus: primes must be distinct");
  FactoredModulus P;
  CompensatedSum log_p;
  for (const auto p : primes) {
    if (!is_prime_u64(p)) throw precondition_error("FactoredModulus: " + std::to_string(p) + " is not prime");
    log_p += std::log(static_cast<double>(p));
    P.phi_ratio *= 1.0 - 1.0 / static_cast<double>(p);
  }
  P.log_P = log_p.value();
  if (primes.size() >= 63) {
    P.divisor_count = std::uint64_t{1} << 63;
    P.divisor_count_saturated = true;
  } else {
    P.divisor_count = std::uint64_t{1} << primes.size();
  }
  P.primes = std::move(primes);
  return P;
}

std::optional<std::uint64_t> FactoredModulus::value() const {
  unsigned __int128 v = 1;
  for (const auto p : primes) {
    v *= p;
    if (v >= (static_cast<unsigned __int128>(1) << 63)) return std::nullopt;
  }
  return static_cast<std::uint64_t>(v);
}

FactoredModulus build_modulus_interval(std::uint64_t lo, std::uint64_t hi) {
  if (lo < 2 || lo >= hi) throw precondition_error("build_modulus_interval: requires 2 <= lo < hi");
  std::vector<std::uint64_t> ps;
  for (const auto p : primes_up_to(hi - 1))
    if (p >= lo) ps.push_back(p);
  if (ps.empty()) throw precondition_error("build_modulus_interval: no primes in the interval");
  return FactoredModulus::from_primes(std::move(ps));
}

FactoredModulus build_modulus_dyadic_half(double y, std::uint64_t seed) {
  if (!(y >= 16.0) || y > 1e12) throw precondition_error("build_modulus_dyadic_half: requires 16 <= y <= 1e12");
  const int J = static_cast<int>(std::floor(std::log(y) / (2.0 * std::log(2.0))));
  const auto all = primes_up_to(static_cast<std::uint64_t>(std::floor(y)));
  std::vector<std::uint64_t> chosen;
  for (int j = 1; j <= J; ++j) {
    const double lo = std::ldexp(y, -j), hi = std::ldexp(y, 1 - j);
    std::vector<std::uint64_t> block;
    for (const auto p : all)
      if (static_cast<double>(p) > lo && static_cast<double>(p) <= hi) block.push_back(p);
    // Partial Fisher-Yates on a stream of its own per block.
    PhiloxStream rng(seed, static_cast<std::uint64_t>(j));
    const std::size_t take = (block.size() + 1) / 2;
    for (std::size_t i = 0; i < take; ++i) std::swap(block[i], block[i + rng.below(block.size() - i)]);
    chosen.insert(chosen.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(take));
  }
  if (chosen.empty()) throw precondition_error("build_modulus_dyadic_half: empty selection");
  return FactoredModulus::from_primes(std::move(chosen));
}

namespace {

// Legendre's phi(x, a): integers in [1, x] free of primes[0..a). Primes
// above x cannot divide anything counted and are dropped, which keeps the
// recursion to squarefree divisors of P below x.
std::uint64_t legendre_phi(const std::vector<std::uint64_t>& primes, std::uint64_t x, std::size_t a) {
  if (x == 0) return 0;
  a = std::min<std::size_t>(a, static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(a), x) - primes.begin()));
  if (a == 0) return x;
  if (a == 1) return x - x / primes[0];
  return legendre_phi(primes, x, a - 1) - legendre_phi(primes, x / primes[a - 1], a - 1);
}

}  // namespace

std::uint64_t coprime_count(const FactoredModulus& P, std::uint64_t h) {
  return legendre_phi(P.primes, h, P.primes.size());
}

double E_u(const FactoredModulus& P, double y, double u) {
  if (!(u > 0.0)) throw precondition_error("E_u: requires u > 0");
  if (!(y > 1.0)) throw precondition_error("E_u: requires y > 1");
  const double z = std::pow(y, u);
  if (z > kCountLimit) throw precondition_error("E_u: y^u exceeds the counting limit 1e10");
  const auto n = static_cast<std::uint64_t>(std::floor(z));
  const double c = static_cast<double>(coprime_count(P, n));
  return (c - static_cast<double>(n) * P.phi_ratio) / z;
}

EScan scan_E_u(const FactoredModulus& P, double y, double u_lo, double u_hi, double step) {
  if (!(step > 0.0) || !(u_lo > 0.0) || u_hi < u_lo) throw precondition_error("scan_E_u: bad u grid");
  EScan scan;
  scan.u_limit = std::log(kCountLimit) / std::log(y);
  const double d = P.divisor_count_saturated ? std::ldexp(1.0, 63) : static_cast<double>(P.divisor_count);
  for (long i = 0;; ++i) {
    const double u = u_lo + step * static_cast<double>(i);
    if (u > u_hi + 1e-12) break;
    if (u > scan.u_limit) {
      scan.truncated = true;
      break;
    }
    EScanPoint pt;
    pt.u = u;
    pt.E = E_u(P, y, u);
    pt.ie_bound = d * std::pow(y, -u);
    pt.envelope = u > std::numbers::e ? std::exp(-u * (std::log(u) + std::log(std::log(u)))) : NAN;
    scan.positive += pt.E > 0.0;
    scan.negative += pt.E < 0.0;
    scan.points.push_back(pt);
  }
  return scan;
}

complex zeta_P(complex s, const FactoredModulus& P) {
  if (!(s.real() > 0.0)) throw domain_error("zeta_P: requires Re s > 0");
  complex v = zeta(s);
  for (const auto p : P.primes) v *= 1.0 - std::exp(-s * std::log(static_cast<double>(p)));
  return v;
}

ZetaPIdentityCheck zeta_p_identity_check(complex s, const FactoredModulus& P, double y, double U_max, double tolerance) {
  if (!(s.real() > 0.0)) throw domain_error("zeta_p_identity_check: requires Re s > 0");
  if (!(y > 1.0) || !(U_max > 0.0)) throw precondition_error("zeta_p_identity_check: requires y > 1 and U_max > 0");
  const double Z = std::pow(y, U_max);
  if (Z > 1e8) throw precondition_error("zeta_p_identity_check: y^U_max above 1e8 terms");
  ZetaPIdentityCheck out;
  out.U_max = U_max;
  out.lhs = zeta_P(s, P);
  const double sigma = s.real();
  const double d = P.divisor_count_saturated ? std::ldexp(1.0, 63) : static_cast<double>(P.divisor_count);
  out.tail_bound = std::abs(s) * d * std::pow(y, -U_max * sigma) / sigma;
  if (out.tail_bound > tolerance) {
    std::ostringstream msg;
    msg << "zeta_p_identity_check: tail bound " << out.tail_bound << " exceeds tolerance " << tolerance
        << "; raise U_max";
    throw precondition_error(msg.str());
  }
  // With z = y^u the integral is int_1^Z s z^{-s-1} D([z]) dz, where
  // D(n) = #{m <= n : (m, P) = 1} - n phi(P)/P is constant on [n, n+1).
  const auto N = static_cast<std::uint64_t>(std::floor(Z));
  const auto pw = [&](double n) { return std::exp(-s * std::log(n)); };
  CompensatedComplexSum acc;
  std::uint64_t coprime = 0;
  complex cur = 1.0;  // n^{-s}
  constexpr std::uint64_t kBlock = std::uint64_t{1} << 16;
  std::vector<std::uint8_t> hit(kBlock);
  for (std::uint64_t lo = 1; lo <= N; lo += kBlock) {
    const std::uint64_t hi = std::min(N, lo + kBlock - 1);
    std::fill(hit.begin(), hit.end(), 0);
    for (const auto p : P.primes) {
      if (p > hi) break;
      for (std::uint64_t m = ((lo + p - 1) / p) * p; m <= hi; m += p) hit[m - lo] = 1;
    }
    for (std::uint64_t n = lo; n <= hi; ++n) {
      coprime += hit[n - lo] == 0;
      const double D = static_cast<double>(coprime) - static_cast<double>(n) * P.phi_ratio;
      const complex next = n < N ? pw(static_cast<double>(n + 1)) : pw(Z);
      acc += D * (cur - next);
      cur = next;
    }
  }
  out.terms = N;
  out.rhs = zeta(s) * P.phi_ratio + acc.value();
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

MaierMatrix maier_matrix(std::uint64_t x_scale, const FactoredModulus& P, std::uint64_t h) {
  const auto Pv = P.value();
  if (!Pv) throw capacity_error("maier_matrix: P does not fit in 63 bits");
  if (h < 1) throw precondition_error("maier_matrix: requires h >= 1");
  MaierMatrix M;
  M.P = *Pv;
  M.h = h;
  M.x_scale = x_scale;
  M.rows = x_scale / M.P;
  if (M.rows < 1) throw precondition_error("maier_matrix: requires x >= P");
  const unsigned __int128 top = static_cast<unsigned __int128>(2 * M.rows) * M.P + h;
  if (top > (static_cast<unsigned __int128>(1) << 40)) throw capacity_error("maier_matrix: entries exceed sieve capacity");
  const std::uint64_t lo = (M.rows + 1) * M.P + 1;
  const auto seg = sieve_range(lo, static_cast<std::uint64_t>(top) + 1);
  M.row_counts.assign(M.rows, 0);
  M.column_counts.assign(h, 0);
  for (std::uint64_t i = 1; i <= M.rows; ++i) {
    const std::uint64_t base = (M.rows + i) * M.P;
    for (std::uint64_t j = 1; j <= h; ++j)
      if (seg.is_prime(base + j)) {
        ++M.row_counts[i - 1];
        ++M.column_counts[j - 1];
      }
  }
  M.row_total = std::accumulate(M.row_counts.begin(), M.row_counts.end(), std::uint64_t{0});
  M.column_total = std::accumulate(M.column_counts.begin(), M.column_counts.end(), std::uint64_t{0});
  M.coprime_columns = coprime_count(P, h);
  const double x = static_cast<double>(x_scale), lx = std::log(x);
  M.row_prediction = x / static_cast<double>(M.P) * static_cast<double>(h) / lx;
  M.column_prediction = x / (static_cast<double>(M.P) * P.phi_ratio) * static_cast<double>(M.coprime_columns) / lx;
  M.row_ratio = static_cast<double>(M.row_total) / M.row_prediction;
  M.column_ratio = static_cast<double>(M.column_total) / M.column_prediction;
  return M;
}

InclusionExclusionDemo inclusion_exclusion_demo() {
  const double l = std::log(10.0 / 9.0);
  InclusionExclusionDemo d;
  d.lhs_coeff = 1.0 - l + 0.5 * l * l;
  d.rhs_coeff = 0.9;
  d.difference = d.lhs_coeff - d.rhs_coeff;
  return d;
}

std::string to_string(SequenceKind k) {
  switch (k) {
    case SequenceKind::ones: return "ones";
    case SequenceKind::primes: return "primes";
    case SequenceKind::two_squares: return "two_squares";
    case SequenceKind::custom: return "custom";
  }
  return "?";
}

SequenceKind parse_sequence_kind(const std::string& s) {
  if (s == "ones") return SequenceKind::ones;
  if (s == "primes") return SequenceKind::primes;
  if (s == "two_squares") return SequenceKind::two_squares;
  throw precondition_error("unknown sequence '" + s + "' (ones | primes | two_squares)");
}

ArithSequence ArithSequence::ones() {
  ArithSequence s;
  s.kind_ = SequenceKind::ones;
  s.h_ = [](std::uint64_t, unsigned) { return 1.0; };
  return s;
}

ArithSequence ArithSequence::primes() {
  ArithSequence s;
  s.kind_ = SequenceKind::primes;
  s.h_ = [](std::uint64_t, unsigned) { return 0.0; };
  return s;
}

ArithSequence ArithSequence::two_squares() {
  ArithSequence s;
  s.kind_ = SequenceKind::two_squares;
  s.h_ = [](std::uint64_t p, unsigned k) {
    if (p % 4 != 3) return 1.0;  // p = 2 and p = 1 mod 4
    return (k % 2 == 0) ? 1.0 : 1.0 / static_cast<double>(p);
  };
  return s;
}

ArithSequence ArithSequence::custom(weight_fn a, density_fn h) {
  if (!a || !h) throw precondition_error("ArithSequence::custom: weight and density are required");
  ArithSequence s;
  s.kind_ = SequenceKind::custom;
  s.a_ = std::move(a);
  s.h_ = std::move(h);
  return s;
}

ArithSequence ArithSequence::of_kind(SequenceKind k) {
  switch (k) {
    case SequenceKind::ones: return ones();
    case SequenceKind::primes: return primes();
    case SequenceKind::two_squares: return two_squares();
    case SequenceKind::custom: break;
  }
  throw precondition_error("ArithSequence::of_kind: custom sequences need explicit weights");
}

double ArithSequence::density(std::uint64_t d) const {
  if (d == 0) throw domain_error("ArithSequence::density: d must be positive");
  double v = 1.0;
  for (const auto& f : factorize(d)) v *= h_(f.prime, f.exponent);
  return v;
}

std::vector<double> ArithSequence::weights(std::uint64_t x) const {
  std::vector<double> a(x + 1, 0.0);
  switch (kind_) {
    case SequenceKind::ones:
      std::fill(a.begin() + 1, a.end(), 1.0);
      break;
    case SequenceKind::primes:
      for (const auto p : primes_up_to(x)) a[p] = 1.0;
      break;
    case SequenceKind::two_squares: {
      const auto t = two_squares_table(x);
      for (std::uint64_t n = 1; n <= x; ++n) a[n] = t[n] ? 1.0 : 0.0;
      break;
    }
    case SequenceKind::custom:
      for (std::uint64_t n = 1; n <= x; ++n) {
        a[n] = a_(n);
        if (!(a[n] >= 0.0)) throw precondition_error("ArithSequence: weights must be nonnegative");
      }
      break;
  }
  return a;
}

SequenceTable::SequenceTable(const ArithSequence& seq, std::uint64_t x) : x_(x) {
  if (x < 1 || x > 100'000'000) throw capacity_error("SequenceTable: requires 1 <= x <= 1e8");
  a_ = seq.weights(x);
  total_ = prefix(x);
}

double SequenceTable::prefix(std::uint64_t n) const {
  if (n > x_) throw precondition_error("SequenceTable::prefix: n beyond the table");
  CompensatedSum s;
  for (std::uint64_t m = 1; m <= n; ++m) s += a_[m];
  return s.value();
}

double SequenceTable::multiples(std::uint64_t d) const {
  if (d < 1) throw precondition_error("SequenceTable::multiples: requires d >= 1");
  CompensatedSum s;
  for (std::uint64_t m = d; m <= x_; m += d) s += a_[m];
  return s.value();
}

double SequenceTable::progression(std::uint64_t q, std::uint64_t a) const {
  if (q < 1) throw precondition_error("SequenceTable::progression: requires q >= 1");
  CompensatedSum s;
  std::uint64_t m = a % q;
  if (m == 0) m = q;
  for (; m <= x_; m += q) s += a_[m];
  return s.value();
}

double sequence_summatory(const ArithSequence& seq, std::uint64_t x) { return SequenceTable(seq, x).summatory(); }
double sequence_multiples(const ArithSequence& seq, std::uint64_t d, std::uint64_t x) {
  return SequenceTable(seq, x).multiples(d);
}
double sequence_progression(const ArithSequence& seq, std::uint64_t q, std::uint64_t a, std::uint64_t x) {
  return SequenceTable(seq, x).progression(q, a);
}

namespace {

void finish(DiscrepancyReport& r) {
  r.relative_deviation = std::abs(r.observed - r.predicted) / std::max(r.predicted, DiscrepancyReport::epsilon);
}

}  // namespace

DiscrepancyReport interval_report(const SequenceTable& t, std::uint64_t x, std::uint64_t y) {
  if (x < 1 || x + y > t.x()) throw precondition_error("interval_report: requires 1 <= x and x + y <= table size");
  DiscrepancyReport r;
  r.scale = DiscrepancyReport::Scale::interval;
  r.parameters = "x=" + std::to_string(x) + " y=" + std::to_string(y);
  const double Ax = t.prefix(x);
  r.observed = t.prefix(x + y) - Ax;
  r.predicted = static_cast<double>(y) * Ax / static_cast<double>(x);
  r.empirical_share = t.summatory() > 0 ? r.observed / t.summatory() : 0.0;
  finish(r);
  return r;
}

DiscrepancyReport multiples_report(const ArithSequence& seq, const SequenceTable& t, std::uint64_t d) {
  DiscrepancyReport r;
  r.scale = DiscrepancyReport::Scale::progression;
  r.parameters = "d=" + std::to_string(d) + " x=" + std::to_string(t.x());
  r.observed = t.multiples(d);
  r.predicted = seq.density(d) / static_cast<double>(d) * t.summatory();
  r.empirical_share = t.summatory() > 0 ? r.observed / t.summatory() : 0.0;
  finish(r);
  return r;
}

DiscrepancyReport progression_report(const ArithSequence& seq, const SequenceTable& t, std::uint64_t q,
                                     std::uint64_t a) {
  if (q < 1) throw precondition_error("progression_report: requires q >= 1");
  DiscrepancyReport r;
  r.scale = DiscrepancyReport::Scale::progression;
  r.parameters = "q=" + std::to_string(q) + " a=" + std::to_string(a) + " x=" + std::to_string(t.x());
  r.observed = t.progression(q, a);
  r.empirical_share = t.summatory() > 0 ? r.observed / t.summatory() : 0.0;
  double f = 0.0;
  switch (seq.kind()) {
    case SequenceKind::ones:
      f = 1.0;
      break;
    case SequenceKind::primes:
      f = std::gcd(a, q) == 1 ? 1.0 : 0.0;
      break;
    default:
      r.has_prediction = false;
      r.note = "f_q is only specified for the ones and primes sequences";
      r.predicted = NAN;
      r.relative_deviation = NAN;
      return r;
  }
  double gamma = 1.0;  // prod_{p | q} (p - 1) / (p - h(p))
  for (const auto p : distinct_prime_factors(q)) {
    const double pd = static_cast<double>(p);
    gamma *= (pd - 1.0) / (pd - seq.density_prime_power(p, 1));
  }
  r.predicted = f / (static_cast<double>(q) * gamma) * t.summatory();
  finish(r);
  return r;
}

std::vector<std::uint64_t> residue_gaps(std::uint64_t q) {
  if (q < 2 || q > 10'000'000) throw precondition_error("residue_gaps: requires 2 <= q <= 1e7");
  std::vector<std::uint64_t> gaps;
  ReducedResidueStream stream(q, q);
  std::uint64_t first = 0, prev = 0, r = 0;
  while (stream.next(r)) {
    if (first == 0)
      first = r;
    else
      gaps.push_back(r - prev);
    prev = r;
  }
  gaps.push_back(first + q - prev);
  return gaps;
}

Histogram residue_gap_distribution(std::uint64_t q, std::vector<double> edges) {
  if (q < 2 || q > 1'000'000'000) throw capacity_error("residue_gap_distribution: requires 2 <= q <= 1e9");
  Histogram hist(std::move(edges));
  const double scale = static_cast<double>(euler_phi(q)) / static_cast<double>(q);
  ReducedResidueStream stream(q, q);
  std::uint64_t first = 0, prev = 0, r = 0;
  while (stream.next(r)) {
    if (first == 0)
      first = r;
    else
      hist.add(static_cast<double>(r - prev) * scale);
    prev = r;
  }
  hist.add(static_cast<double>(first + q - prev) * scale);
  return hist;
}

MvMoment mv_moment(std::uint64_t q, std::uint64_t h, unsigned k) {
  if (q < 1 || q > 1'000'000) throw capacity_error("mv_moment: requires 1 <= q <= 1e6");
  if (k < 1 || k > 4) throw precondition_error("mv_moment: requires 1 <= k <= 4");
  if (h < 1) throw precondition_error("mv_moment: requires h >= 1");
  MvMoment out;
  out.q = q;
  out.h = h;
  out.k = k;
  const std::uint64_t phi = euler_phi(q);
  std::vector<std::uint8_t> coprime(q);
  for (std::uint64_t m = 0; m < q; ++m) coprime[m] = std::gcd(m, q) == 1;
  // Power sums of c(n) = #{l <= h : (n + l, q) = 1}, n = 1..q.
  std::uint64_t c = 0;
  for (std::uint64_t l = 1; l <= h; ++l) c += coprime[(1 + l) % q];
  unsigned __int128 S[5] = {0, 0, 0, 0, 0};
  for (std::uint64_t n = 1; n <= q; ++n) {
    unsigned __int128 pw = 1;
    for (unsigned j = 0; j <= k; ++j) {
      S[j] += pw;
      pw *= c;
    }
    c += coprime[(n + 1 + h) % q];
    c -= coprime[(n + 1) % q];
  }
  if (k == 1) {
    out.direct = static_cast<double>(static_cast<__int128>(S[1]) - static_cast<__int128>(h) * phi);
  } else {
    const long double mean = static_cast<long double>(h) * phi / q;
    long double sum = 0.0L, binom = 1.0L;
    for (unsigned j = 0; j <= k; ++j) {
      sum += binom * static_cast<long double>(S[j]) * std::pow(-mean, static_cast<int>(k - j));
      binom = binom * (k - j) / (j + 1);
    }
    out.direct = static_cast<double>(sum);
  }
  if (k == 2 && is_squarefree(q)) {
    // sum_{l1, l2 <= h} prod_{p | q} (p - nu_{l1,l2}(p)), grouped by |l1 - l2|.
    const auto ps = distinct_prime_factors(q);
    unsigned __int128 total = 0;
    for (std::uint64_t d = 0; d < h; ++d) {
      unsigned __int128 prod = 1;
      for (const auto p : ps) prod *= (d % p == 0) ? p - 1 : p - 2;
      total += prod * (d == 0 ? h : 2 * (h - d));
    }
    const long double hp = static_cast<long double>(h) * phi;
    out.oracle = static_cast<double>(static_cast<long double>(total) - hp * hp / q);
    out.has_oracle = true;
  } else {
    out.oracle = NAN;
  }
  return out;
}

}  // namespace primelab
