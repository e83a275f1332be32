#include "primelab/singular.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "primelab/arithmetic.hpp"
#include "primelab/error.hpp"
#include "primelab/parallel.hpp"
#include "primelab/sieve.hpp"
#include "primelab/zeta.hpp"

namespace primelab {

TupleSet::TupleSet(std::vector<std::int64_t> offsets) : h_(std::move(offsets)) {
  std::sort(h_.begin(), h_.end());
  if (!h_.empty() && h_.front() < 0) throw precondition_error("TupleSet: offsets must be nonnegative");
  if (std::adjacent_find(h_.begin(), h_.end()) != h_.end())
    throw precondition_error("TupleSet: offsets must be distinct");
}

TupleSet TupleSet::parse(std::string_view text) {
  std::vector<std::int64_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw precondition_error("TupleSet: cannot parse offset '" + std::string(item) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw precondition_error("TupleSet: trailing comma");
  }
  if (out.empty()) throw precondition_error("TupleSet: empty tuple string");
  return TupleSet(std::move(out));
}

TupleSet TupleSet::shifted(std::int64_t c) const {
  TupleSet t = *this;
  for (auto& v : t.h_) v += c;
  if (!t.h_.empty() && t.h_.front() < 0) throw precondition_error("TupleSet: shift makes an offset negative");
  return t;
}

TupleSet TupleSet::subset(std::uint32_t mask) const {
  TupleSet t;
  for (std::size_t i = 0; i < h_.size(); ++i)
    if (mask >> i & 1u) t.h_.push_back(h_[i]);
  return t;
}

std::uint64_t nu(const TupleSet& H, std::uint64_t p) {
  if (H.empty()) throw domain_error("nu: empty tuple");
  if (p == 0) throw domain_error("nu: p must be prime");
  // p > span: offsets are distinct mod p
  if (static_cast<std::uint64_t>(H.span()) < p) return H.size();
  std::vector<std::uint64_t> r;
  r.reserve(H.size());
  for (const auto h : H.offsets()) r.push_back(static_cast<std::uint64_t>(h) % p);
  std::sort(r.begin(), r.end());
  return static_cast<std::uint64_t>(std::unique(r.begin(), r.end()) - r.begin());
}

double local_factor(const TupleSet& H, std::uint64_t p) {
  if (H.empty()) return 1.0;
  const double v = static_cast<double>(nu(H, p));
  const double pd = static_cast<double>(p);
  return (1.0 - v / pd) * std::pow(1.0 - 1.0 / pd, -static_cast<double>(H.size()));
}

namespace {

// Sieved primes, grown on demand and shared between threads.
const std::vector<std::uint64_t>& primes_through(std::uint64_t limit) {
  static std::mutex m;
  static std::vector<std::uint64_t> cache;
  static std::uint64_t covered = 0;
  std::lock_guard lock(m);
  if (covered < limit) {
    cache = primes_up_to(std::max<std::uint64_t>(limit, 2 * covered));
    covered = std::max<std::uint64_t>(limit, 2 * covered);
  }
  return cache;
}

// log[(1 - k/p)(1 - 1/p)^{-k}], the generic factor once nu(p) = k.
double log_generic_factor(unsigned k, double p) { return std::log1p(-static_cast<double>(k) / p) - k * std::log1p(-1.0 / p); }

// sum over primes k < p <= cutoff of log_generic_factor(k, p), memoized.
double generic_log_sum(unsigned k, std::uint64_t cutoff) {
  static std::mutex m;
  static std::map<std::pair<unsigned, std::uint64_t>, double> memo;
  {
    std::lock_guard lock(m);
    if (auto it = memo.find({k, cutoff}); it != memo.end()) return it->second;
  }
  CompensatedSum sum;
  if (k >= 2) {
    const auto& primes = primes_through(cutoff);
    for (const auto p : primes) {
      if (p > cutoff) break;
      if (p <= k) continue;
      sum += log_generic_factor(k, static_cast<double>(p));
    }
  }
  std::lock_guard lock(m);
  memo[{k, cutoff}] = sum.value();
  return sum.value();
}

// Relative tail bound for the primes above the cutoff, all with nu = k.
// For p >= 2k, |log_generic_factor| <= (k^2 + k)/p^2 <= 2k^2/p^2, and
// sum_{p > m} p^{-2} < 1/(m - 1). Primes in (cutoff, 2k) are added exactly.
double tail_bound(unsigned k, std::uint64_t cutoff) {
  if (k < 2) return 0.0;
  double T = 0.0;
  std::uint64_t m = cutoff;
  if (cutoff < 2ull * k) {
    for (std::uint64_t p = cutoff + 1; p < 2ull * k; ++p)
      if (is_prime_u64(p)) T += std::abs(log_generic_factor(k, static_cast<double>(p)));
    m = 2ull * k - 1;
  }
  T += 2.0 * k * k / (static_cast<double>(m) - 1.0);
  return std::expm1(T);
}

struct LogSingular {
  double log_value = 0.0;
  bool vanishes = false;
};

// H must be normalized (min offset 0) with prime_cutoff > span and > k.
// Only primes p <= k or dividing some difference can have nu(p) < k; all
// others contribute the generic factor, summed once in generic_log_sum.
LogSingular singular_log(const TupleSet& H, std::uint64_t cutoff, double generic) {
  const unsigned k = static_cast<unsigned>(H.size());
  LogSingular out;
  if (k < 2) return out;
  CompensatedSum acc(generic);
  for (std::uint64_t p = 2; p <= k; ++p) {
    if (!is_prime_u64(p)) continue;
    const std::uint64_t v = nu(H, p);
    if (v == p) {
      out.vanishes = true;
      return out;
    }
    const double pd = static_cast<double>(p);
    acc += std::log1p(-static_cast<double>(v) / pd) - k * std::log1p(-1.0 / pd);
  }
  std::vector<std::uint64_t> special;
  const auto& h = H.offsets();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (const auto p : distinct_prime_factors(static_cast<std::uint64_t>(h[j] - h[i])))
        if (p > k && p <= cutoff) special.push_back(p);
  std::sort(special.begin(), special.end());
  special.erase(std::unique(special.begin(), special.end()), special.end());
  for (const auto p : special) {
    const double pd = static_cast<double>(p);
    const double v = static_cast<double>(nu(H, p));
    acc += std::log1p(-v / pd) - k * std::log1p(-1.0 / pd) - log_generic_factor(k, pd);
  }
  out.log_value = acc.value();
  return out;
}

void check_cutoff(const TupleSet& H, std::uint64_t cutoff) {
  if (cutoff <= static_cast<std::uint64_t>(H.span()) || cutoff <= H.size())
    throw precondition_error("singular_series: prime_cutoff must exceed the tuple span and size (got " +
                             std::to_string(cutoff) + ")");
}

}  // namespace

SingularValue singular_series(const TupleSet& H, std::uint64_t prime_cutoff) {
  SingularValue out;
  out.prime_cutoff = prime_cutoff;
  if (H.size() < 2) return out;  // every local factor is exactly 1
  check_cutoff(H, prime_cutoff);
  const unsigned k = static_cast<unsigned>(H.size());
  const auto r = singular_log(H.normalized(), prime_cutoff, generic_log_sum(k, prime_cutoff));
  if (r.vanishes) {
    out.value = 0.0;
    out.vanishes = true;
    return out;
  }
  out.value = std::exp(r.log_value);
  out.tail_bound = tail_bound(k, prime_cutoff);
  return out;
}

double singular_series_pair(std::uint64_t l, std::uint64_t prime_cutoff) {
  if (l == 0) throw precondition_error("singular_series_pair: l must be positive");
  if (l % 2 == 1) return 0.0;
  if (prime_cutoff < 3) throw precondition_error("singular_series_pair: prime_cutoff must be >= 3");
  // p = 2 contributes 2; odd p | l contribute (p - 1)/(p - 2) over the generic factor.
  CompensatedSum acc(std::log(2.0) + generic_log_sum(2, prime_cutoff));
  for (const auto p : distinct_prime_factors(l))
    if (p > 2 && p <= prime_cutoff) {
      const double pd = static_cast<double>(p);
      acc += std::log1p(1.0 / (pd - 2.0));
    }
  return std::exp(acc.value());
}

namespace {

std::vector<std::uint64_t> squarefree_primes(std::uint64_t q) {
  if (q == 0) throw domain_error("modulus must be positive");
  const auto f = factorize(q);
  for (const auto& pf : f)
    if (pf.exponent > 1) throw domain_error("modulus " + std::to_string(q) + " is not squarefree");
  std::vector<std::uint64_t> primes;
  for (const auto& pf : f) primes.push_back(pf.prime);
  return primes;
}

}  // namespace

std::uint64_t pattern_count_mod(const TupleSet& H, std::uint64_t q) {
  const auto primes = squarefree_primes(q);
  std::uint64_t count = 1;
  for (const auto p : primes) count *= p - (H.empty() ? 0 : nu(H, p));
  return count;
}

double s_factor_mod(const TupleSet& H, std::uint64_t q) {
  double v = 1.0;
  for (const auto p : squarefree_primes(q)) v *= local_factor(H, p);
  return v;
}

double s0_transform(const TupleSet& H, std::uint64_t prime_cutoff) {
  const std::size_t k = H.size();
  if (k > 20) throw capacity_error("s0_transform: |H| > 20 needs more than 2^20 subset terms");
  if (k >= 2) check_cutoff(H, prime_cutoff);
  CompensatedSum sum;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    const auto J = H.subset(mask);
    const double s = J.size() < 2 ? 1.0 : singular_series(J, prime_cutoff).value;
    sum += ((k - J.size()) % 2 == 0) ? s : -s;
  }
  return sum.value();
}

GallagherResult gallagher_average(unsigned k, std::uint64_t h, std::uint64_t prime_cutoff, unsigned threads) {
  if (k < 1 || h < k) throw precondition_error("gallagher_average: requires 1 <= k <= h");
  long double binom = 1.0L;
  for (unsigned i = 0; i < k; ++i) binom = binom * static_cast<long double>(h - i) / (i + 1);
  if (binom > 1e8L) throw capacity_error("gallagher_average: C(h, k) exceeds the 1e8 enumeration guard");
  GallagherResult out;
  out.count = static_cast<std::uint64_t>(std::llround(static_cast<double>(binom)));
  if (k == 1) {
    out.sum_S = static_cast<double>(h);
    out.ratio = 1.0;
    return out;
  }
  if (prime_cutoff <= h - 1 || prime_cutoff <= k)
    throw precondition_error("gallagher_average: prime_cutoff must exceed h - 1 and k");
  // A k-subset of [1, h] is a translate of a pattern {0 = d_1 < ... < d_k};
  // a pattern with span d_k occurs h - d_k times.
  const double generic = generic_log_sum(k, prime_cutoff);
  const double rel_tail = tail_bound(k, prime_cutoff);
  struct Partial {
    CompensatedSum sum;
  };
  const auto per_second = ordered_map(h - 1, threads, [&](std::size_t i) {
    Partial part;
    std::vector<std::int64_t> d(k);
    d[0] = 0;
    d[1] = static_cast<std::int64_t>(i) + 1;
    const auto hmax = static_cast<std::int64_t>(h) - 1;
    // odometer over d[2..k-1] strictly increasing in (d[1], hmax]
    std::size_t level = 2;
    if (k == 2) {
      const auto r = singular_log(TupleSet(d), prime_cutoff, generic);
      if (!r.vanishes) part.sum += std::exp(r.log_value) * static_cast<double>(h - d[1]);
      return part;
    }
    d[2] = d[1];
    while (level >= 2) {
      ++d[level];
      if (d[level] > hmax - static_cast<std::int64_t>(k - 1 - level)) {
        --level;
        continue;
      }
      if (level + 1 < k) {
        d[level + 1] = d[level];
        ++level;
        continue;
      }
      const auto r = singular_log(TupleSet(d), prime_cutoff, generic);
      if (!r.vanishes) part.sum += std::exp(r.log_value) * static_cast<double>(static_cast<std::int64_t>(h) - d[k - 1]);
    }
    return part;
  });
  CompensatedSum total;
  for (const auto& p : per_second) total += p.sum;
  out.sum_S = total.value();
  out.ratio = out.sum_S / static_cast<double>(binom);
  out.tail_bound = rel_tail * std::abs(out.sum_S);
  return out;
}

PairSumExpansion pair_sum_expansion(std::uint64_t h, std::uint64_t prime_cutoff) {
  if (h < 2) throw precondition_error("pair_sum_expansion: requires h >= 2");
  CompensatedSum exact;
  for (std::uint64_t l = 2; l < h; l += 2) exact += singular_series_pair(l, prime_cutoff) * static_cast<double>(h - l);
  const double hd = static_cast<double>(h);
  PairSumExpansion out;
  out.exact = exact.value();
  out.predicted = hd * hd / 2.0 - hd * std::log(hd) / 2.0 + hl_constant_B() * hd / 2.0;
  return out;
}

namespace {

// log(1 + w) accurate for small |w|.
complex log1p_complex(complex w) {
  if (std::abs(w) < 1e-4) return w * (1.0 - w * (0.5 - w * (1.0 / 3.0 - w * 0.25)));
  return std::log(1.0 + w);
}

// log of the G factor at p > 2: w = (p^{1-s} - 1)/(p-1)^2.
complex log_G_factor(complex s, std::uint64_t p) {
  const double pd = static_cast<double>(p);
  const complex pw = std::exp((1.0 - s) * std::log(pd));
  return log1p_complex((pw - 1.0) / ((pd - 1.0) * (pd - 1.0)));
}

}  // namespace

complex dirichlet_G(complex s, std::uint64_t prime_cutoff) {
  CompensatedComplexSum acc;
  acc += (1.0 - s) * std::log(2.0);  // p = 2 factor is 2^{1-s}
  for (const auto p : primes_through(prime_cutoff)) {
    if (p > prime_cutoff) break;
    if (p > 2) acc += log_G_factor(s, p);
  }
  return std::exp(acc.value());
}

complex dirichlet_H(complex s, std::uint64_t prime_cutoff) {
  CompensatedComplexSum acc;
  for (const auto p : primes_through(prime_cutoff)) {
    if (p > prime_cutoff) break;
    const double pd = static_cast<double>(p);
    acc += log1p_complex(-std::exp(-(s + 1.0) * std::log(pd)));
    acc += (p == 2) ? (1.0 - s) * std::log(2.0) : log_G_factor(s, p);
  }
  return std::exp(acc.value());
}

DirichletF dirichlet_F(complex s, std::uint64_t term_cutoff, std::uint64_t prime_cutoff) {
  if (s == complex(1.0, 0.0)) throw pole_error("dirichlet_F: pole at s = 1");
  if (!(s.real() > 0.0)) throw domain_error("dirichlet_F: requires Re s > 0");
  DirichletF out;
  const double sigma = s.real();
  if (sigma > 1.0) {
    const auto spf = smallest_prime_factor_table(term_cutoff);
    const double base = std::log(2.0) + generic_log_sum(2, prime_cutoff);
    CompensatedComplexSum series;
    for (std::uint64_t l = 2; l <= term_cutoff; l += 2) {
      double lg = base;
      for (std::uint64_t m = l; m > 1;) {
        const std::uint64_t p = spf[m];
        while (m % p == 0) m /= p;
        if (p > 2 && p <= prime_cutoff) lg += std::log1p(1.0 / (static_cast<double>(p) - 2.0));
      }
      series += std::exp(lg - s * std::log(static_cast<double>(l)));
    }
    out.series = series.value();
    out.series_tail = std::pow(static_cast<double>(term_cutoff), 1.0 - sigma) / (sigma - 1.0);
  } else {
    out.series = complex(NAN, NAN);
    out.series_tail = INFINITY;
  }
  out.product = zeta(s) * dirichlet_G(s, prime_cutoff);
  // |factor - 1| <= (1 + p^{1-sigma})/(p-1)^2 <= 2/(p-1)^2 for sigma >= 1,
  // and |log(1+w)| <= 2|w| for |w| <= 1/2; sum_{p > c} 4/(p-1)^2 < 4/(c-1).
  out.product_tail = sigma >= 1.0 ? std::expm1(4.0 / (static_cast<double>(prime_cutoff) - 1.0)) : NAN;
  return out;
}

}  // namespace primelab
