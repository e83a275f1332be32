#pragma once

// Segmented, odd-only bit-packed sieve of Eratosthenes.
//
// A PrimeSegment covers the half-open window [lo, hi). Bit i of the packed
// words stands for the odd number odd_base + 2i, where odd_base is the
// first odd integer >= lo; the prime 2 is tracked separately.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace primelab {

struct SieveConfig {
  std::uint64_t segment_size = std::uint64_t{1} << 22;  // integers per work unit
  std::uint64_t max_window = std::uint64_t{1} << 34;    // largest materialized window
  unsigned threads = 0;                                  // 0 = default_threads()
};

class PrimeSegment {
 public:
  PrimeSegment() = default;

  std::uint64_t lo() const noexcept { return lo_; }
  std::uint64_t hi() const noexcept { return hi_; }
  std::uint64_t size() const noexcept { return hi_ - lo_; }

  // n must lie in [lo, hi).
  bool is_prime(std::uint64_t n) const noexcept {
    if (n == 2) return has_two_;
    if ((n & 1) == 0 || n < odd_base_) return false;
    const std::uint64_t i = (n - odd_base_) >> 1;
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  std::uint64_t count() const noexcept;
  std::vector<std::uint64_t> primes() const;

  template <typename Fn>
  void for_each_prime(Fn&& fn) const {
    if (has_two_) fn(std::uint64_t{2});
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        fn(odd_base_ + 2 * ((static_cast<std::uint64_t>(w) << 6) + static_cast<std::uint64_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  bool operator==(const PrimeSegment&) const = default;

 private:
  friend PrimeSegment sieve_range(std::uint64_t, std::uint64_t, const SieveConfig&);
  friend class SegmentBuilder;

  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  std::uint64_t odd_base_ = 1;
  bool has_two_ = false;
  std::vector<std::uint64_t> words_;
};

// All primes p <= limit, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// Exact primality bitmap of [lo, hi). Requires lo < hi < 2^63.
// Throws capacity_error when hi - lo exceeds config.max_window.
PrimeSegment sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config = {});

// Streams [lo, hi) as consecutive segments of config.segment_size integers,
// invoking fn on each in ascending order. Segments may be built in
// parallel; fn always runs on the calling thread.
void scan_segments(std::uint64_t lo, std::uint64_t hi,
                   const std::function<void(const PrimeSegment&)>& fn, const SieveConfig& config = {});

// Convenience wrapper over scan_segments visiting every prime in [lo, hi).
void for_each_prime(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& fn,
                    const SieveConfig& config = {});

// pi(x) by sieving.
std::uint64_t prime_count(std::uint64_t x, const SieveConfig& config = {});

// Deterministic Miller-Rabin, exact for all 64-bit n.
bool is_prime_u64(std::uint64_t n) noexcept;

// Integer square root floor(sqrt(n)).
std::uint64_t isqrt(std::uint64_t n) noexcept;

}  // namespace primelab
