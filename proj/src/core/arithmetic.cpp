#include "primelab/arithmetic.hpp"

#include <algorithm>
#include <cmath>

#include "primelab/error.hpp"

namespace primelab {

namespace {

// floor(n^(1/k)) for k >= 2.
std::uint64_t iroot(std::uint64_t n, unsigned k) {
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(n), 1.0L / k));
  auto pow_le = [&](std::uint64_t b) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= b;
      if (acc > n) return false;
    }
    return true;
  };
  while (r > 0 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

}  // namespace

std::uint64_t prime_power_base(std::uint64_t n) {
  if (n < 2) return 0;
  if (is_prime_u64(n)) return n;
  for (unsigned k = 2; k < 64 && (std::uint64_t{1} << k) <= n; ++k) {
    const std::uint64_t r = iroot(n, k);
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) acc *= r;
    if (acc == n && is_prime_u64(r)) return r;
  }
  return 0;
}

double von_mangoldt(std::uint64_t n) {
  if (n == 0) throw domain_error("von_mangoldt: n must be >= 1");
  const std::uint64_t p = prime_power_base(n);
  return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

std::vector<double> von_mangoldt_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  std::vector<double> out(hi > lo ? hi - lo : 0, 0.0);
  if (hi <= lo) return out;
  scan_segments(
      lo, hi,
      [&](const PrimeSegment& s) {
        s.for_each_prime([&](std::uint64_t p) { out[p - lo] = std::log(static_cast<double>(p)); });
      },
      config);
  // Higher prime powers: only p <= sqrt(hi) contribute.
  for (const std::uint64_t p : primes_up_to(isqrt(hi - 1))) {
    const double lp = std::log(static_cast<double>(p));
    for (unsigned __int128 q = static_cast<unsigned __int128>(p) * p; q < hi; q *= p)
      if (q >= lo) out[static_cast<std::uint64_t>(q) - lo] = lp;
  }
  return out;
}

std::vector<PrimeFactor> factorize(std::uint64_t n) {
  std::vector<PrimeFactor> out;
  if (n < 2) return out;
  auto take = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
    return e > 0;
  };
  take(2);
  take(3);
  if (n > 1 && !is_prime_u64(n)) {
    for (std::uint64_t p = 5; p * p <= n; p += 6) {
      const bool hit = take(p) | take(p + 2);
      if (hit && (n == 1 || is_prime_u64(n))) break;
    }
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& f : factorize(n)) out.push_back(f.prime);
  return out;
}

bool is_squarefree(std::uint64_t n) {
  if (n == 0) return false;
  const auto f = factorize(n);
  return std::all_of(f.begin(), f.end(), [](const PrimeFactor& pf) { return pf.exponent == 1; });
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t phi = n;
  for (const auto& f : factorize(n)) phi = phi / f.prime * (f.prime - 1);
  return phi;
}

bool two_squares_indicator(std::uint64_t n) {
  if (n == 0) return true;
  for (const auto& f : factorize(n))
    if (f.prime % 4 == 3 && f.exponent % 2 == 1) return false;
  return true;
}

std::vector<std::uint32_t> smallest_prime_factor_table(std::uint64_t limit) {
  if (limit >= (std::uint64_t{1} << 32)) throw capacity_error("smallest_prime_factor_table: limit too large");
  std::vector<std::uint32_t> spf(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }
  return spf;
}

std::vector<bool> two_squares_table(std::uint64_t limit) {
  const auto spf = smallest_prime_factor_table(limit);
  std::vector<bool> out(limit + 1, false);
  out[0] = true;
  if (limit >= 1) out[1] = true;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    std::uint64_t m = n;
    bool ok = true;
    while (m > 1 && ok) {
      const std::uint64_t p = spf[m];
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (p % 4 == 3 && e % 2 == 1) ok = false;
    }
    out[n] = ok;
  }
  return out;
}

void for_each_coprime(std::span<const std::uint64_t> primes, std::uint64_t lo, std::uint64_t hi,
                      const std::function<void(std::uint64_t)>& fn) {
  if (lo > hi) return;
  constexpr std::uint64_t kBlock = std::uint64_t{1} << 20;
  std::vector<std::uint8_t> marks;
  for (std::uint64_t a = lo; a <= hi;) {
    const std::uint64_t b = std::min(hi, a + kBlock - 1);
    marks.assign(b - a + 1, 1);
    for (const std::uint64_t p : primes) {
      for (std::uint64_t m = (a + p - 1) / p * p; m <= b; m += p) marks[m - a] = 0;
    }
    for (std::uint64_t n = a; n <= b; ++n)
      if (marks[n - a] && n != 0) fn(n);
    if (b == hi) break;
    a = b + 1;
  }
}

std::vector<std::uint64_t> reduced_residues(std::uint64_t q, std::uint64_t limit) {
  if (q == 0) throw domain_error("reduced_residues: q must be >= 1");
  std::vector<std::uint64_t> out;
  const auto primes = distinct_prime_factors(q);
  for_each_coprime(primes, 1, limit, [&](std::uint64_t n) { out.push_back(n); });
  return out;
}

ReducedResidueStream::ReducedResidueStream(std::uint64_t q, std::uint64_t limit, std::uint64_t block)
    : ReducedResidueStream(q == 0 ? throw domain_error("ReducedResidueStream: q must be >= 1")
                                  : distinct_prime_factors(q),
                           limit, block) {}

ReducedResidueStream::ReducedResidueStream(std::vector<std::uint64_t> primes, std::uint64_t limit,
                                           std::uint64_t block)
    : primes_(std::move(primes)), limit_(limit), block_(std::max<std::uint64_t>(block, 64)) {
  refill();
}

void ReducedResidueStream::refill() {
  marks_.clear();
  cursor_ = 0;
  if (block_lo_ > limit_) return;
  const std::uint64_t b = std::min(limit_, block_lo_ + block_ - 1);
  marks_.assign(b - block_lo_ + 1, 1);
  for (const std::uint64_t p : primes_)
    for (std::uint64_t m = (block_lo_ + p - 1) / p * p; m <= b; m += p) marks_[m - block_lo_] = 0;
}

bool ReducedResidueStream::next(std::uint64_t& out) {
  for (;;) {
    while (cursor_ < marks_.size()) {
      const std::uint64_t i = cursor_++;
      if (marks_[i]) {
        out = block_lo_ + i;
        return true;
      }
    }
    if (marks_.empty()) return false;
    block_lo_ += marks_.size();
    refill();
    if (marks_.empty()) return false;
  }
}

}  // namespace primelab
