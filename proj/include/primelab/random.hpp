#pragma once

#include <array>
#include <cstdint>

namespace primelab {

// Philox4x32-10 counter-based generator (Salmon et al.). The output for a
// given (key, counter) pair is a pure function, so a stream can be split
// across segments without changing the drawn values.
class Philox {
 public:
  using block = std::array<std::uint32_t, 4>;

  explicit Philox(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  block at(std::uint64_t counter_lo, std::uint64_t counter_hi = 0) const noexcept {
    block ctr{static_cast<std::uint32_t>(counter_lo), static_cast<std::uint32_t>(counter_lo >> 32),
              static_cast<std::uint32_t>(counter_hi), static_cast<std::uint32_t>(counter_hi >> 32)};
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

  // Uniform double in [0, 1) for stream position `index`.
  double uniform(std::uint64_t index, std::uint64_t stream = 0) const noexcept {
    const block b = at(index, stream);
    const std::uint64_t bits = (std::uint64_t{b[0]} << 32) | b[1];
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

 private:
  std::array<std::uint32_t, 2> key_;
};

// Sequential adapter over Philox for code that wants a stream of draws.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept : gen_(seed), stream_(stream) {}

  double uniform() noexcept { return gen_.uniform(pos_++, stream_); }

  // Uniform integer in [0, bound) by rejection, exact for any bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      const auto b = gen_.at(pos_++, stream_);
      const std::uint64_t v = (std::uint64_t{b[0]} << 32) | b[1];
      if (v < limit) return v % bound;
    }
  }

 private:
  Philox gen_;
  std::uint64_t stream_;
  std::uint64_t pos_ = 0;
};

}  // namespace primelab
