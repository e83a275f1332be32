#include "primelab/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "primelab/error.hpp"
#include "primelab/parallel.hpp"

namespace primelab {

namespace {

constexpr std::uint64_t kMaxHi = std::uint64_t{1} << 63;

// Clears composite bits for odd n in [odd_base + 2*bit_lo, odd_base + 2*bit_hi).
// bit_lo must be a multiple of 64 so that concurrent chunks own whole words.
void mark_chunk(std::uint64_t* words, std::uint64_t odd_base, std::uint64_t bit_lo, std::uint64_t bit_hi,
                std::span<const std::uint64_t> base_primes) {
  const std::uint64_t n_lo = odd_base + 2 * bit_lo;
  const std::uint64_t n_hi = odd_base + 2 * bit_hi;  // exclusive
  for (const std::uint64_t p : base_primes) {
    if (p == 2) continue;
    if (p * p >= n_hi) break;
    std::uint64_t start = std::max(p * p, (n_lo + p - 1) / p * p);
    if ((start & 1) == 0) start += p;
    for (std::uint64_t m = start; m < n_hi; m += 2 * p) {
      const std::uint64_t i = (m - odd_base) >> 1;
      words[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }
}

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<std::uint8_t> mark(limit + 1, 1);
  mark[0] = mark[1] = 0;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (mark[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) mark[j] = 0;
  for (std::uint64_t i = 2; i <= limit; ++i)
    if (mark[i]) out.push_back(i);
  return out;
}

void check_window(std::uint64_t lo, std::uint64_t hi) {
  if (lo >= hi) throw precondition_error("sieve window requires lo < hi");
  if (hi >= kMaxHi) throw precondition_error("sieve window must satisfy hi < 2^63");
}

}  // namespace

class SegmentBuilder {
 public:
  static PrimeSegment empty(std::uint64_t lo, std::uint64_t hi) {
    PrimeSegment s;
    s.lo_ = lo;
    s.hi_ = hi;
    s.odd_base_ = lo | 1;
    s.has_two_ = lo <= 2 && 2 < hi;
    const std::uint64_t nbits = hi > s.odd_base_ ? (hi - s.odd_base_ + 1) / 2 : 0;
    s.words_.assign((nbits + 63) / 64, ~std::uint64_t{0});
    if (nbits % 64 != 0) s.words_.back() = (std::uint64_t{1} << (nbits % 64)) - 1;
    if (s.odd_base_ == 1 && nbits > 0) s.words_[0] &= ~std::uint64_t{1};  // 1 is not prime
    return s;
  }

  static PrimeSegment build(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint64_t> base,
                            std::uint64_t chunk_bits = 0, unsigned threads = 1) {
    PrimeSegment s = empty(lo, hi);
    const std::uint64_t nbits = hi > s.odd_base_ ? (hi - s.odd_base_ + 1) / 2 : 0;
    if (nbits == 0) return s;
    if (chunk_bits == 0 || chunk_bits >= nbits) {
      mark_chunk(s.words_.data(), s.odd_base_, 0, nbits, base);
      return s;
    }
    const std::uint64_t chunks = (nbits + chunk_bits - 1) / chunk_bits;
    ordered_map(chunks, threads, [&](std::size_t c) {
      const std::uint64_t b0 = c * chunk_bits;
      const std::uint64_t b1 = std::min(nbits, b0 + chunk_bits);
      mark_chunk(s.words_.data(), s.odd_base_, b0, b1, base);
      return 0;
    });
    return s;
  }
};

std::uint64_t isqrt(std::uint64_t n) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t PrimeSegment::count() const noexcept {
  std::uint64_t c = has_two_ ? 1 : 0;
  for (const std::uint64_t w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

std::vector<std::uint64_t> PrimeSegment::primes() const {
  std::vector<std::uint64_t> out;
  out.reserve(count());
  for_each_prime([&](std::uint64_t p) { out.push_back(p); });
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  if (limit < (std::uint64_t{1} << 20)) return small_primes(limit);
  if (limit >= kMaxHi - 1) throw capacity_error("primes_up_to: limit too large");
  const auto base = primes_up_to(isqrt(limit));
  return SegmentBuilder::build(0, limit + 1, base).primes();
}

PrimeSegment sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  check_window(lo, hi);
  if (hi - lo > config.max_window)
    throw capacity_error("sieve window of " + std::to_string(hi - lo) + " integers exceeds max_window " +
                         std::to_string(config.max_window));
  const auto base = primes_up_to(isqrt(hi - 1));
  std::uint64_t chunk_bits = std::max<std::uint64_t>(64, config.segment_size / 2);
  chunk_bits = (chunk_bits + 63) / 64 * 64;
  return SegmentBuilder::build(lo, hi, base, chunk_bits, config.threads);
}

void scan_segments(std::uint64_t lo, std::uint64_t hi, const std::function<void(const PrimeSegment&)>& fn,
                   const SieveConfig& config) {
  if (lo >= hi) return;
  check_window(lo, hi);
  const std::uint64_t seg = std::max<std::uint64_t>(128, config.segment_size);
  const auto base = primes_up_to(isqrt(hi - 1));
  const std::uint64_t total = (hi - lo + seg - 1) / seg;
  unsigned threads = config.threads == 0 ? default_threads() : config.threads;
  const std::uint64_t batch = std::max<unsigned>(1, threads);
  for (std::uint64_t first = 0; first < total; first += batch) {
    const std::uint64_t n = std::min(batch, total - first);
    const auto segments = ordered_map(n, threads, [&](std::size_t i) {
      const std::uint64_t a = lo + (first + i) * seg;
      return SegmentBuilder::build(a, std::min(hi, a + seg), base);
    });
    for (const auto& s : segments) fn(s);
  }
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& fn,
                    const SieveConfig& config) {
  scan_segments(lo, hi, [&](const PrimeSegment& s) { s.for_each_prime(fn); }, config);
}

std::uint64_t prime_count(std::uint64_t x, const SieveConfig& config) {
  std::uint64_t c = 0;
  scan_segments(0, x + 1, [&](const PrimeSegment& s) { c += s.count(); }, config);
  return c;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) noexcept {
  std::uint64_t r = 1;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (const std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Bases proven sufficient for n < 2^64 (Sinclair).
  for (const std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    const std::uint64_t base = a % n;
    if (base == 0) continue;
    std::uint64_t x = powmod(base, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace primelab
