#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "primelab/error.hpp"
#include "primelab/moments.hpp"
#include "primelab/numeric.hpp"

using namespace primelab;

namespace {

std::vector<double> lambda_array(std::uint64_t n) {
  std::vector<double> out(n + 1, 0.0);
  for (std::uint64_t m = 1; m <= n; ++m) out[m] = oracle::mangoldt(m);
  return out;
}

// Stirling numbers of the second kind by the usual recurrence, times k!.
double surjections_by_recurrence(unsigned r, unsigned k) {
  std::vector<std::vector<double>> s(r + 1, std::vector<double>(k + 1, 0.0));
  s[0][0] = 1.0;
  for (unsigned i = 1; i <= r; ++i)
    for (unsigned j = 1; j <= k; ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
  double f = 1.0;
  for (unsigned j = 2; j <= k; ++j) f *= j;
  return s[r][k] * f;
}

}  // namespace

TEST_CASE("tuple counts on small ranges") {
  CHECK(tuple_count({0, 2}, 100) == 8);
  CHECK(tuple_count({0}, 10) == 4);
  CHECK(tuple_count({0, 2, 6}, 100) == 4);
  CHECK(tuple_count({0, 2, 4}, 1000) == 1);  // only 3, 5, 7
  CHECK(tuple_count({0, 1}, 1000) == 1);     // 2, 3

  for (const auto& H : std::vector<TupleSet>{{0, 4}, {0, 2, 6}, {0, 6, 12, 18}, {1, 3}}) {
    std::uint64_t brute = 0;
    for (std::uint64_t n = 1; n <= 5000; ++n) {
      bool all = true;
      for (auto h : H.offsets()) all = all && oracle::trial_division_prime(n + static_cast<std::uint64_t>(h));
      brute += all;
    }
    CHECK(tuple_count(H, 5000) == brute);
  }
  CHECK_THROWS_AS(tuple_count(TupleSet{}, 10), precondition_error);
}

TEST_CASE("Hardy-Littlewood predictions") {
  const auto twin = hl_prediction({0, 2}, 100'000'000);
  CHECK(twin.literal == doctest::Approx(389'107.0).epsilon(1e-4));
  // The integral form tracks the count to well under 1%.
  const double count = static_cast<double>(tuple_count({0, 2}, 100'000'000));
  CHECK(std::abs(twin.integral / count - 1.0) < 0.005);

  const auto blocked = hl_prediction({0, 2, 4}, 1000);
  CHECK(blocked.vanishes);
  CHECK(blocked.literal == 0.0);
  CHECK_THROWS_AS(hl_prediction({0, 2}, 2), precondition_error);
}

TEST_CASE("lambda tuple sum matches a direct sum") {
  const auto L = lambda_array(3000);
  for (const auto& H : std::vector<TupleSet>{{0}, {0, 2}, {0, 1}, {0, 2, 6}}) {
    double direct = 0.0;
    for (std::uint64_t n = 1; n + static_cast<std::uint64_t>(H.max()) <= 3000 && n <= 2000; ++n) {
      double prod = 1.0;
      for (auto h : H.offsets()) prod *= L[n + static_cast<std::uint64_t>(h)];
      direct += prod;
    }
    CHECK(lambda_tuple_sum(H, 2000) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("psi window moments against a direct scan") {
  const std::uint64_t N = 20'000, h = 37;
  const auto L = lambda_array(N + h + 1);
  std::vector<double> direct(5, 0.0);
  for (std::uint64_t n = 1; n <= N; ++n) {
    double w = 0.0;
    for (std::uint64_t m = n + 1; m <= n + h; ++m) w += L[m];
    for (unsigned r = 1; r <= 4; ++r) direct[r] += std::pow(w - static_cast<double>(h), r);
  }
  const auto ms = psi_window_moments(N, h, 4);
  REQUIRE(ms.size() == 4);
  for (unsigned r = 1; r <= 4; ++r)
    CHECK(ms[r - 1].empirical == doctest::Approx(direct[r] / N).epsilon(1e-9));
  CHECK(psi_window_moment(N, h, 3).empirical == doctest::Approx(ms[2].empirical));

  const auto var = psi_window_variance(N, h);
  CHECK(var.empirical == doctest::Approx(direct[2] / N).epsilon(1e-9));
  // The reported pieces recombine to the empirical value.
  CHECK(var.piece("diagonal") + var.piece("off_diagonal") + var.piece("centering") ==
        doctest::Approx(var.empirical).epsilon(1e-9));
  CHECK_THROWS_AS(var.piece("missing"), precondition_error);
}

TEST_CASE("psi window variance at scale") {
  const auto v = psi_window_variance(10'000'000, 1000);
  CHECK(std::abs(v.ratio - 1.0) < 0.05);
  CHECK(v.piece("empirical_over_cramer") < 0.6);
  CHECK(std::abs(v.piece("mean_window") - 1000.0) < 10.0);
}

TEST_CASE("threads do not change the moments") {
  SieveConfig one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = psi_window_moments(3'000'000, 50, 4, one);
  const auto b = psi_window_moments(3'000'000, 50, 4, many);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].empirical == b[i].empirical);
}

TEST_CASE("surjection counts") {
  for (unsigned r = 1; r <= 20; ++r)
    for (unsigned k = 1; k <= r; ++k)
      CHECK(static_cast<double>(surjection_count(r, k)) == doctest::Approx(surjections_by_recurrence(r, k)));
  CHECK(surjection_count(4, 2) == 14);
  CHECK(to_string(surjection_count(20, 20)) == "2432902008176640000");
  CHECK(to_string(surjection_count(20, 10)) == "21473732319740064000");  // exceeds 2^64
  CHECK(to_string(0) == "0");
  CHECK_THROWS_AS(surjection_count(3, 4), precondition_error);
  CHECK_THROWS_AS(surjection_count(21, 2), precondition_error);
}

TEST_CASE("moment decompositions reconstruct the direct sums") {
  for (unsigned r = 1; r <= 4; ++r) {
    const auto d = moment_decomposition(5000, 10, r);
    CHECK(d.reconstructed_count == doctest::Approx(d.direct_count).epsilon(1e-10));
    CHECK(d.reconstructed_lambda0 == doctest::Approx(d.direct_lambda0).epsilon(1e-8));
    CHECK(d.count_terms.size() == r);
  }
  // r = 1: the single term is the mean window count.
  const auto d1 = moment_decomposition(1000, 5, 1);
  double mean = 0.0;
  for (std::uint64_t n = 1; n <= 1000; ++n)
    for (std::uint64_t l = 1; l <= 5; ++l) mean += oracle::trial_division_prime(n + l);
  CHECK(d1.count_terms[0] == doctest::Approx(mean / 1000.0));
  CHECK_THROWS_AS(moment_decomposition(10'000, 40, 6), capacity_error);
  CHECK_THROWS_AS(moment_decomposition(100, 10, 7), precondition_error);
}

TEST_CASE("distinct-tuple sums of singular series") {
  // k = 2 reduces to a sum over differences.
  const std::uint64_t h = 300;
  double pairs = 0.0;
  for (std::uint64_t l = 1; l < h; ++l) pairs += (h - l) * singular_series_pair(l, kBulkSingularCutoff);
  const auto e2 = distinct_tuple_sum(2, h);
  CHECK(e2.exact == doctest::Approx(2.0 * pairs).epsilon(1e-12));
  const auto s2 = s0_distinct_sum(2, h);
  CHECK(s2.exact == doctest::Approx(2.0 * pairs - (double(h) * h - h)).epsilon(1e-12));

  // k = 3 against the subset formula term by term on a small h.
  const std::uint64_t g = 25;
  double brute = 0.0;
  for (std::uint64_t a = 1; a <= g; ++a)
    for (std::uint64_t b = 1; b <= g; ++b)
      for (std::uint64_t c = 1; c <= g; ++c) {
        if (a == b || b == c || a == c) continue;
        const TupleSet H{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), static_cast<std::int64_t>(c)};
        brute += s0_transform(H, kBulkSingularCutoff);
      }
  CHECK(s0_distinct_sum(3, g).exact == doctest::Approx(brute).epsilon(1e-9));

  const auto big = s0_distinct_sum(2, 1000);
  CHECK(big.exact == doctest::Approx(big.predicted).epsilon(0.01));
  CHECK_THROWS_AS(s0_distinct_sum(4, 10), precondition_error);
  CHECK_THROWS_AS(s0_distinct_sum(3, 2000), capacity_error);
}

TEST_CASE("moment examples at desk scale") {
  const double psi10 = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0);
  CHECK(lambda_tuple_sum({0}, 10) == doctest::Approx(psi10).epsilon(1e-14));
  CHECK(lambda_tuple_sum({0, 1}, 10'000) < 50.0);
  const double twin = singular_series({0, 2}, 10'000'000).value;
  CHECK(lambda_tuple_sum({0, 2}, 100'000'000) / (twin * 1e8) == doctest::Approx(1.0).epsilon(0.05));

  const auto s3 = s0_distinct_sum(3, 50);
  CHECK(std::abs(s3.exact) <= std::pow(50 * std::log(50.0), 1.5));
  const auto e2 = distinct_tuple_sum(2, 1000);
  CHECK(std::abs(e2.exact - e2.predicted) <= 10 * std::pow(1000.0, 0.6));
  const auto e3 = distinct_tuple_sum(3, 60);
  CHECK(e3.exact / e3.predicted == doctest::Approx(1.0).epsilon(0.1));

  const auto zero = psi_window_variance(1000, 0);
  CHECK(zero.empirical == 0.0);
  // Even Gaussian moments follow mu_r = (r - 1) mu_{r-2} h log(N/h).
  const auto ms = psi_window_moments(100'000, 10, 6);
  const double s = 10 * std::log(1e4);
  CHECK(ms[3].predicted == doctest::Approx(3 * ms[1].predicted * s));
  CHECK(ms[5].predicted == doctest::Approx(5 * ms[3].predicted * s));
}
