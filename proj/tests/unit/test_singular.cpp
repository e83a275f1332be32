#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "primelab/error.hpp"
#include "primelab/singular.hpp"
#include "primelab/zeta.hpp"

using namespace primelab;

namespace {

// Residue count and local factor straight from the definitions.
std::uint64_t nu_direct(const std::vector<std::int64_t>& h, std::uint64_t p) {
  std::vector<bool> hit(p, false);
  std::uint64_t c = 0;
  for (auto v : h)
    if (!hit[static_cast<std::uint64_t>(v) % p]) {
      hit[static_cast<std::uint64_t>(v) % p] = true;
      ++c;
    }
  return c;
}

double naive_product(const std::vector<std::int64_t>& h, std::uint64_t cutoff) {
  long double v = 1.0L;
  for (auto p : oracle::simple_primes(cutoff)) {
    const long double pd = static_cast<long double>(p);
    v *= (1.0L - nu_direct(h, p) / pd) / std::pow(1.0L - 1.0L / pd, static_cast<long double>(h.size()));
  }
  return static_cast<double>(v);
}

std::vector<std::int64_t> random_offsets(std::mt19937_64& rng, std::size_t k, std::int64_t bound) {
  std::vector<std::int64_t> out;
  while (out.size() < k) {
    const auto v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(bound));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("TupleSet construction and parsing") {
  CHECK(TupleSet::parse("0,2,6").offsets() == std::vector<std::int64_t>{0, 2, 6});
  CHECK(TupleSet::parse(" 6, 0 ,2").offsets() == std::vector<std::int64_t>{0, 2, 6});
  CHECK_THROWS_AS(TupleSet::parse(""), precondition_error);
  CHECK_THROWS_AS(TupleSet::parse("0,,2"), precondition_error);
  CHECK_THROWS_AS(TupleSet::parse("0,2,"), precondition_error);
  CHECK_THROWS_AS(TupleSet::parse("x"), precondition_error);
  CHECK_THROWS_AS(TupleSet({1, 1}), precondition_error);
  CHECK_THROWS_AS(TupleSet({-1, 3}), precondition_error);
  CHECK(TupleSet({3, 5, 9}).normalized() == TupleSet({0, 2, 6}));
  CHECK(TupleSet({3, 5, 9}).subset(0b101) == TupleSet({3, 9}));
}

TEST_CASE("nu and local_factor") {
  CHECK(nu({0, 2}, 2) == 1);
  CHECK(nu({0, 2}, 3) == 2);
  CHECK(nu({0, 1, 2}, 2) == 2);
  CHECK_THROWS_AS(nu(TupleSet{}, 3), domain_error);
  CHECK(local_factor({0, 2}, 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(local_factor({0, 1}, 2) == 0.0);
  CHECK(local_factor({0, 2}, 5) == doctest::Approx(0.9375).epsilon(1e-15));
}

TEST_CASE("singular_series examples") {
  CHECK(singular_series({0}, 100).value == 1.0);
  CHECK(singular_series({17}, 100).value == 1.0);
  const auto v01 = singular_series({0, 1}, 100);
  CHECK(v01.vanishes);
  CHECK(v01.value == 0.0);
  CHECK(v01.tail_bound == 0.0);
  const auto twin = singular_series({0, 2}, 10'000'000);
  CHECK(std::abs(twin.value - 1.320324) < 1e-6);
  CHECK(twin.tail_bound < 1e-6);
  CHECK(twin.prime_cutoff == 10'000'000);
  CHECK_THROWS_AS(singular_series({0, 50}, 50), precondition_error);
  CHECK_THROWS_AS(singular_series({0, 2, 4, 6}, 4), precondition_error);
}

TEST_CASE("singular_series against the naive Euler product") {
  CHECK(singular_series({0, 2}, 100'000).value == doctest::Approx(naive_product({0, 2}, 100'000)).epsilon(1e-12));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    const auto h = random_offsets(rng, 2 + rng() % 5, 200);
    const auto got = singular_series(TupleSet(h), 3000);
    const double want = naive_product(h, 3000);
    CAPTURE(h);
    CHECK(got.value == doctest::Approx(want).epsilon(1e-12));
    CHECK(got.vanishes == (want == 0.0));
  }
}

TEST_CASE("singular_series invariants") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = 2 + rng() % 5;
    const auto h = random_offsets(rng, k, 40);
    const TupleSet H(h);
    const auto base = singular_series(H, 1000);
    // translation invariance
    CHECK(singular_series(H.shifted(static_cast<std::int64_t>(rng() % 1000)), 1000).value ==
          doctest::Approx(base.value).epsilon(1e-13));
    // vanishing iff some p <= k is fully covered
    bool covered = false;
    for (std::uint64_t p : {2ull, 3ull, 5ull})
      if (p <= k && nu_direct(h, p) == p) covered = true;
    CHECK(base.vanishes == covered);
    // monotone tail
    CHECK(singular_series(H, 5000).tail_bound <= base.tail_bound);
  }
}

TEST_CASE("singular_series_pair matches the general evaluator") {
  for (std::uint64_t l = 1; l < 400; ++l)
    CHECK(singular_series_pair(l, 1000) ==
          doctest::Approx(singular_series({0, static_cast<std::int64_t>(l)}, 1000).value).epsilon(1e-13));
}

TEST_CASE("pattern_count_mod equals brute force for squarefree q <= 200") {
  std::mt19937_64 rng(1);
  int checked = 0;
  for (std::uint64_t q = 1; q <= 200; ++q) {
    bool sqf = true;
    for (std::uint64_t d = 2; d * d <= q; ++d)
      if (q % (d * d) == 0) sqf = false;
    if (!sqf) {
      CHECK_THROWS_AS(pattern_count_mod({0}, q), domain_error);
      continue;
    }
    for (int t = 0; t < 4; ++t) {
      const std::size_t k = 1 + rng() % std::min<std::uint64_t>(5, q);
      const auto h = random_offsets(rng, k, static_cast<std::int64_t>(q));
      std::uint64_t brute = 0;
      for (std::uint64_t n = 1; n <= q; ++n) {
        bool ok = true;
        for (auto v : h) ok = ok && oracle::gcd(n + static_cast<std::uint64_t>(v), q) == 1;
        brute += ok;
      }
      const TupleSet H(h);
      REQUIRE(pattern_count_mod(H, q) == brute);
      double phi = static_cast<double>(q);
      for (std::uint64_t p = 2; p <= q; ++p)
        if (q % p == 0 && oracle::trial_division_prime(p)) phi = phi / p * (p - 1);
      CHECK(static_cast<double>(q) * std::pow(phi / q, static_cast<double>(k)) * s_factor_mod(H, q) ==
            doctest::Approx(static_cast<double>(brute)).epsilon(1e-12).scale(1.0));
      ++checked;
    }
  }
  CHECK(checked > 400);
  CHECK(pattern_count_mod({0, 2}, 6) == 1);
  CHECK(pattern_count_mod({0}, 30) == 8);
  CHECK(pattern_count_mod({0, 1}, 2) == 0);
  CHECK(s_factor_mod({0, 2}, 1) == 1.0);
  CHECK(s_factor_mod({0, 1}, 2) == 0.0);
  CHECK(6.0 * std::pow(1.0 / 3.0, 2) * s_factor_mod({0, 2}, 6) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("s0_transform") {
  CHECK(s0_transform(TupleSet{}) == 1.0);
  CHECK(s0_transform({5}) == 0.0);
  CHECK(s0_transform({0, 2}) == doctest::Approx(singular_series({0, 2}).value - 1.0).epsilon(1e-14));
  CHECK(std::abs(s0_transform({0, 2}) - 0.320324) < 1e-5);
  std::vector<std::int64_t> big(21);
  for (int i = 0; i < 21; ++i) big[i] = i;
  CHECK_THROWS_AS(s0_transform(TupleSet(big)), capacity_error);
  // round trip S(H) = sum_J S0(J)
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    const std::size_t k = 1 + rng() % 5;
    const TupleSet H(random_offsets(rng, k, 31));
    double sum = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) sum += s0_transform(H.subset(mask), 1000);
    CHECK(std::abs(sum - singular_series(H, 1000).value) < 1e-9);
  }
}

TEST_CASE("gallagher_average") {
  const auto small = gallagher_average(2, 3, 100);
  CHECK(small.count == 3);
  CHECK(small.sum_S == doctest::Approx(singular_series({0, 2}, 100).value).epsilon(1e-13));
  CHECK(small.ratio == doctest::Approx(0.440).epsilon(1e-3));
  const auto ones = gallagher_average(1, 57);
  CHECK(ones.ratio == 1.0);
  CHECK(ones.count == 57);
  const auto g = gallagher_average(2, 10'000);
  CHECK(g.ratio > 0.99);
  CHECK(g.ratio < 1.01);
  CHECK_THROWS_AS(gallagher_average(3, 2), precondition_error);
  CHECK_THROWS_AS(gallagher_average(4, 1000), capacity_error);
  // brute force over every subset of {1..h}
  for (unsigned k : {2u, 3u, 4u}) {
    const std::int64_t h = 13;
    double brute = 0.0;
    std::uint64_t count = 0;
    for (std::uint32_t mask = 0; mask < (1u << h); ++mask) {
      if (static_cast<unsigned>(__builtin_popcount(mask)) != k) continue;
      std::vector<std::int64_t> sub;
      for (std::int64_t i = 0; i < h; ++i)
        if (mask >> i & 1u) sub.push_back(i + 1);
      brute += singular_series(TupleSet(sub), 500).value;
      ++count;
    }
    const auto got = gallagher_average(k, h, 500, 3);
    CHECK(got.count == count);
    CHECK(got.sum_S == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("pair_sum_expansion") {
  CHECK(pair_sum_expansion(4).exact == doctest::Approx(2.0 * singular_series({0, 2}).value).epsilon(1e-14));
  CHECK(std::abs(pair_sum_expansion(4).exact - 2.64065) < 1e-5);
  CHECK(pair_sum_expansion(2).exact == 0.0);
  const auto p = pair_sum_expansion(10'000);
  CHECK(std::abs(p.exact - p.predicted) <= 5.0 * std::pow(1e4, 0.6));
  double direct = 0.0;
  for (std::int64_t l = 1; l <= 300; ++l) direct += singular_series({0, l}, 1000).value * (300 - l);
  CHECK(pair_sum_expansion(300, 1000).exact == doctest::Approx(direct).epsilon(1e-12));
  CHECK_THROWS_AS(pair_sum_expansion(1), precondition_error);
}

TEST_CASE("dirichlet_F, G and H") {
  CHECK(dirichlet_G(complex(1.0, 0.0), 100'000).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(dirichlet_G(complex(1.0, 0.0), 100'000).imag()) < 1e-15);
  const auto f2 = dirichlet_F(complex(2.0, 0.0), 1'000'000, 1'000'000);
  CHECK(std::abs(f2.series - f2.product) < 1e-3);
  CHECK(std::abs(f2.series - f2.product) < 2 * (f2.series_tail + f2.product_tail * std::abs(f2.product)));
  const auto f = dirichlet_F(complex(1.5, 4.0), 200'000, 200'000);
  CHECK(std::abs(f.series - f.product) < 0.05);
  const complex s3(3.0, 0.0);
  CHECK(std::abs(dirichlet_G(s3, 100'000) - zeta(complex(4.0, 0.0)) * dirichlet_H(s3, 100'000)) < 1e-9);
  // H is analytic for Re s > -1/2; its truncated product settles there too
  CHECK(std::abs(dirichlet_H(complex(-0.2, 1.0), 200'000) - dirichlet_H(complex(-0.2, 1.0), 400'000)) < 1e-3);
  CHECK_THROWS_AS(dirichlet_F(complex(1.0, 0.0), 100, 100), pole_error);
  CHECK_THROWS_AS(dirichlet_F(complex(-0.5, 0.0), 100, 100), domain_error);
  CHECK(std::isnan(dirichlet_F(complex(0.5, 1.0), 100, 100).series.real()));
}
