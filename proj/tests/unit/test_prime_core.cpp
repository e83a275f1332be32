#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "primelab/arithmetic.hpp"
#include "primelab/error.hpp"
#include "primelab/sieve.hpp"
#include "primelab/summatory.hpp"

using namespace primelab;

TEST_CASE("sieve_range small windows") {
  CHECK(sieve_range(0, 101).count() == 25);
  CHECK(sieve_range(0, 2).count() == 0);
  CHECK(sieve_range(0, 3).count() == 1);
  const auto s = sieve_range(0, 10001);
  CHECK_FALSE(s.is_prime(0));
  CHECK_FALSE(s.is_prime(1));
  for (std::uint64_t n = 0; n <= 10000; ++n) REQUIRE(s.is_prime(n) == oracle::trial_division_prime(n));
}

TEST_CASE("sieve_range high window matches trial division") {
  const std::uint64_t lo = 100'000'000, hi = lo + 10'000;
  CHECK(sieve_range(lo, hi).primes() == oracle::trial_division_primes(lo, hi));
  // odd lower bound and a window that does not start on a word boundary
  CHECK(sieve_range(lo + 7, hi - 3).primes() == oracle::trial_division_primes(lo + 7, hi - 3));
}

TEST_CASE("segmentation invariance") {
  const std::uint64_t N = 3'000'000;
  const auto whole = sieve_range(0, N).primes();
  for (std::uint64_t seg : {128ull, 1000ull, 65536ull + 6, 1ull << 22}) {
    SieveConfig cfg;
    cfg.segment_size = seg;
    CHECK(sieve_range(0, N, cfg).primes() == whole);
    std::vector<std::uint64_t> streamed;
    scan_segments(0, N, [&](const PrimeSegment& s) {
      auto p = s.primes();
      streamed.insert(streamed.end(), p.begin(), p.end());
    }, cfg);
    CHECK(streamed == whole);
  }
  // random partitions
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::uint64_t> cuts{0, N};
    for (int i = 0; i < 12; ++i) cuts.push_back(1 + rng() % (N - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<std::uint64_t> joined;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      auto p = sieve_range(cuts[i], cuts[i + 1]).primes();
      joined.insert(joined.end(), p.begin(), p.end());
    }
    CHECK(joined == whole);
  }
}

TEST_CASE("sieve results independent of thread count") {
  SieveConfig one, four;
  one.threads = 1;
  four.threads = 4;
  one.segment_size = four.segment_size = 1 << 16;
  CHECK(sieve_range(0, 2'000'000, one) == sieve_range(0, 2'000'000, four));
}

TEST_CASE("sieve_range errors") {
  SieveConfig cfg;
  cfg.max_window = 1000;
  CHECK_THROWS_AS(sieve_range(0, 1001, cfg), capacity_error);
  CHECK_THROWS_AS(sieve_range(5, 5), precondition_error);
  CHECK_THROWS_AS(sieve_range(0, std::uint64_t{1} << 63), precondition_error);
}

TEST_CASE("Miller-Rabin agrees with the sieve and known values") {
  const auto s = sieve_range(0, 200'000);
  for (std::uint64_t n = 0; n < 200'000; ++n) REQUIRE(is_prime_u64(n) == s.is_prime(n));
  CHECK(is_prime_u64(2305843009213693951ull));           // 2^61 - 1
  CHECK(is_prime_u64(18446744073709551557ull));          // largest 64-bit prime
  CHECK_FALSE(is_prime_u64(3215031751ull));              // strong pseudoprime to 2,3,5,7
  CHECK_FALSE(is_prime_u64(3825123056546413051ull));     // spsp to the first nine prime bases
  CHECK_FALSE(is_prime_u64(4294967297ull * 3));
}

TEST_CASE("von_mangoldt") {
  CHECK(von_mangoldt(8) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(von_mangoldt(6) == 0.0);
  CHECK(von_mangoldt(7) == doctest::Approx(std::log(7.0)).epsilon(1e-15));
  CHECK(von_mangoldt(1) == 0.0);
  CHECK_THROWS_AS(von_mangoldt(0), domain_error);
  CHECK(von_mangoldt(1ull << 62) == doctest::Approx(std::log(2.0)));
  CHECK(von_mangoldt(3486784401ull) == doctest::Approx(std::log(3.0)));  // 3^20
  for (std::uint64_t n = 1; n < 5000; ++n) REQUIRE(von_mangoldt(n) == doctest::Approx(oracle::mangoldt(n)));
  const auto range = von_mangoldt_range(999'000, 1'001'000);
  for (std::uint64_t n = 999'000; n < 1'001'000; ++n) REQUIRE(range[n - 999'000] == oracle::mangoldt(n));
}

TEST_CASE("summatory") {
  const auto s10 = summatory(10);
  CHECK(s10.pi_x == 4);
  const double direct = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0);
  CHECK(s10.psi_x == doctest::Approx(direct).epsilon(1e-14));
  CHECK(s10.theta_x == doctest::Approx(std::log(210.0)).epsilon(1e-14));

  const auto s1 = summatory(1);
  CHECK(s1.pi_x == 0);
  CHECK(s1.theta_x == 0.0);
  CHECK(s1.psi_x == 0.0);

  const auto big = summatory(1'000'000);
  CHECK(big.pi_x == 78498);
  CHECK(big.psi_x / 1e6 > 0.99);
  CHECK(big.psi_x / 1e6 < 1.01);
  CHECK(big.psi_x >= big.theta_x);
}

TEST_CASE("psi - theta is the prime-power excess and psi = sum theta(x^(1/k))") {
  for (std::uint64_t x : {100ull, 12345ull, 1'000'000ull}) {
    const auto s = summatory(x);
    double excess = 0.0;
    for (std::uint64_t n = 2; n <= x; ++n) {
      if (oracle::trial_division_prime(n)) continue;
      excess += oracle::mangoldt(n);
      if (x > 100'000 && n > 1000) break;  // prime powers beyond 1000 handled below
    }
    if (x > 100'000) {
      excess = 0.0;
      for (std::uint64_t p = 2; p * p <= x; ++p)
        if (oracle::trial_division_prime(p))
          for (std::uint64_t q = p * p; q <= x; q *= p) excess += std::log(static_cast<double>(p));
    }
    CHECK(s.psi_x - s.theta_x == doctest::Approx(excess).epsilon(1e-12));
    double roots = 0.0;
    for (int k = 1;; ++k) {
      const auto r = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(x), 1.0 / k) + 1e-9));
      if (r < 2) break;
      roots += summatory(r).theta_x;
    }
    CHECK(s.psi_x == doctest::Approx(roots).epsilon(1e-13));
  }
  double prev = -1.0;
  for (std::uint64_t x = 0; x < 200; ++x) {
    const double v = summatory(x).psi_x;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("log_integral") {
  CHECK(log_integral(2.0) == doctest::Approx(1.0451637801).epsilon(1e-10));
  CHECK(log_integral(2.0) == doctest::Approx(oracle::li_series(2.0)).epsilon(1e-12));
  for (double x : {3.0, 10.0, 1000.0, 1e6, 1e8, 1e10})
    CHECK(log_integral(x) == doctest::Approx(oracle::li_series(x)).epsilon(1e-10));
  CHECK(log_integral(1e6) > static_cast<double>(prime_count(1'000'000)));
  // continuity at the left endpoint
  CHECK(log_integral(2.0 + 1e-9) - log_integral(2.0) == doctest::Approx(1e-9 / std::log(2.0)).epsilon(1e-4));
  CHECK_THROWS_AS(log_integral(1.5), domain_error);
}

TEST_CASE("two_squares_indicator") {
  CHECK(two_squares_indicator(5));
  CHECK_FALSE(two_squares_indicator(3));
  CHECK(two_squares_indicator(0));
  CHECK(two_squares_indicator(1));
  CHECK(two_squares_indicator(9));
  const auto table = two_squares_table(10'000);
  for (std::uint64_t n = 0; n <= 10'000; ++n) {
    REQUIRE(two_squares_indicator(n) == oracle::sum_of_two_squares_search(n));
    REQUIRE(table[n] == oracle::sum_of_two_squares_search(n));
  }
}

TEST_CASE("reduced_residues") {
  CHECK(reduced_residues(30, 30) == std::vector<std::uint64_t>{1, 7, 11, 13, 17, 19, 23, 29});
  CHECK(reduced_residues(1, 5) == std::vector<std::uint64_t>{1, 2, 3, 4, 5});
  CHECK(reduced_residues(4, 8) == std::vector<std::uint64_t>{1, 3, 5, 7});
  CHECK_THROWS_AS(reduced_residues(0, 5), domain_error);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t q = 1 + rng() % 3000;
    const std::uint64_t limit = 1 + rng() % 4000;
    std::vector<std::uint64_t> expect;
    for (std::uint64_t n = 1; n <= limit; ++n)
      if (oracle::gcd(n, q) == 1) expect.push_back(n);
    REQUIRE(reduced_residues(q, limit) == expect);
    CHECK(reduced_residues(q, q).size() == euler_phi(q));
    ReducedResidueStream stream(q, limit, 97);
    std::vector<std::uint64_t> pulled;
    for (std::uint64_t v; stream.next(v);) pulled.push_back(v);
    REQUIRE(pulled == expect);
  }
}

TEST_CASE("pi(x) via reduced residues of the primes below sqrt(x)") {
  for (std::uint64_t x : {1000ull, 65536ull, 1'000'000ull}) {
    const std::uint64_t r = isqrt(x);
    const auto small = primes_up_to(r);
    std::uint64_t count = 0;
    for_each_coprime(small, r + 1, x, [&](std::uint64_t) { ++count; });
    CHECK(count + small.size() == prime_count(x));
  }
}

TEST_CASE("factorization helpers") {
  CHECK(factorize(360) == std::vector<PrimeFactor>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(factorize(1).empty());
  CHECK(euler_phi(9699690) == 1658880);
  CHECK(is_squarefree(30));
  CHECK_FALSE(is_squarefree(12));
  CHECK(factorize(600851475143ull) == std::vector<PrimeFactor>{{71, 1}, {839, 1}, {1471, 1}, {6857, 1}});
}

TEST_CASE("log_power_integral against integration by parts") {
  // I_1 = li(x) - li(2), I_k = [-t / ((k-1) log^{k-1} t)]_2^x + I_{k-1} / (k-1)
  for (double x : {2.5, 100.0, 1e6, 1e9}) {
    double ik = oracle::li_series(x) - oracle::li_series(2.0);
    CHECK(log_power_integral(x, 1) == doctest::Approx(ik).epsilon(1e-11));
    for (int k = 2; k <= 4; ++k) {
      ik = (2.0 / std::pow(std::log(2.0), k - 1) - x / std::pow(std::log(x), k - 1) + ik) / (k - 1);
      CHECK(log_power_integral(x, k) == doctest::Approx(ik).epsilon(1e-8));
    }
  }
  CHECK(log_power_integral(2.0, 3) == 0.0);
  CHECK_THROWS_AS(log_power_integral(1.0, 1), domain_error);
  CHECK_THROWS_AS(log_power_integral(10.0, 0), domain_error);
}
