#include "primelab/gaps.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <charconv>
#include <cmath>
#include <numbers>

#include "primelab/error.hpp"
#include "primelab/numeric.hpp"
#include "primelab/parallel.hpp"
#include "primelab/random.hpp"

namespace primelab {

Histogram::Histogram(std::vector<double> e) : edges(std::move(e)) {
  if (edges.size() < 2) throw precondition_error("Histogram: need at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1])) throw precondition_error("Histogram: edges must be strictly increasing");
  counts.assign(edges.size() - 1, 0);
}

Histogram Histogram::parse(std::string_view spec) {
  double v[3];
  for (int i = 0; i < 3; ++i) {
    const auto colon = spec.find(':');
    if ((i < 2) == (colon == std::string_view::npos))
      throw precondition_error("Histogram: bin spec must be lo:hi:width");
    const std::string item(spec.substr(0, colon));
    std::size_t used = 0;
    try {
      v[i] = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw precondition_error("Histogram: bad number '" + item + "'");
    if (i < 2) spec.remove_prefix(colon + 1);
  }
  const double lo = v[0], hi = v[1], width = v[2];
  if (!(hi > lo) || !(width > 0)) throw precondition_error("Histogram: need lo < hi and width > 0");
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / width));
  if (n == 0 || std::abs(lo + n * width - hi) > 1e-9 * std::max(1.0, std::abs(hi)))
    throw precondition_error("Histogram: width must divide hi - lo");
  std::vector<double> edges(n + 1);
  for (std::size_t i = 0; i <= n; ++i) edges[i] = lo + static_cast<double>(i) * width;
  edges[n] = hi;
  return Histogram(std::move(edges));
}

void Histogram::add(double x) {
  ++total;
  if (x < edges.front()) {
    ++underflow;
  } else if (!(x < edges.back())) {
    ++overflow;
  } else {
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    ++counts[static_cast<std::size_t>(it - edges.begin()) - 1];
  }
}

double Histogram::fraction_between(double a, double b) const {
  const auto ia = std::find(edges.begin(), edges.end(), a);
  const auto ib = std::find(edges.begin(), edges.end(), b);
  if (ia == edges.end() || ib == edges.end() || ib < ia)
    throw precondition_error("Histogram::fraction_between: bounds must be bin edges");
  std::uint64_t c = 0;
  for (auto i = ia - edges.begin(); i < ib - edges.begin(); ++i) c += counts[static_cast<std::size_t>(i)];
  return total == 0 ? 0.0 : static_cast<double>(c) / total;
}

std::string to_string(GapNormalization g) { return g == GapNormalization::log_p ? "log_p" : "log_index"; }

GapNormalization parse_gap_normalization(std::string_view s) {
  if (s == "log_p") return GapNormalization::log_p;
  if (s == "log_index") return GapNormalization::log_index;
  throw precondition_error("unknown gap normalization '" + std::string(s) + "' (log_p | log_index)");
}

Histogram gap_histogram(std::uint64_t N, std::vector<double> edges, GapNormalization norm, const SieveConfig& config) {
  if (N < 3) throw precondition_error("gap_histogram: requires N >= 3");
  Histogram hist(std::move(edges));
  std::uint64_t prev = 0, index = 0;
  for_each_prime(
      2, N + 1,
      [&](std::uint64_t p) {
        if (prev != 0) {
          const double D = norm == GapNormalization::log_p ? std::log(static_cast<double>(prev))
                                                           : std::log(static_cast<double>(index));
          hist.add(D > 0.0 ? static_cast<double>(p - prev) / D : INFINITY);
        }
        prev = p;
        ++index;
      },
      config);
  return hist;
}

double exponential_mass(double a, double b) {
  const auto cdf = [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); };
  return cdf(b) - cdf(a);
}

double exponential_tv_distance(const Histogram& h) {
  if (h.total == 0) return 0.0;
  const double n = static_cast<double>(h.total);
  double tv = std::abs(h.underflow / n - exponential_mass(-INFINITY, h.edges.front()));
  for (std::size_t i = 0; i < h.bins(); ++i)
    tv += std::abs(h.fraction(i) - exponential_mass(h.edges[i], h.edges[i + 1]));
  tv += std::abs(h.overflow / n - (h.edges.back() <= 0.0 ? 1.0 : std::exp(-h.edges.back())));
  return 0.5 * tv;
}

std::string to_string(WindowRule r) { return r == WindowRule::lambda_log_N ? "lambda_log_N" : "lambda_log_n"; }

WindowRule parse_window_rule(std::string_view s) {
  if (s == "lambda_log_N") return WindowRule::lambda_log_N;
  if (s == "lambda_log_n") return WindowRule::lambda_log_n;
  throw precondition_error("unknown window rule '" + std::string(s) + "' (lambda_log_N | lambda_log_n)");
}

WindowDistribution window_count_distribution(std::uint64_t N, double lambda, WindowRule rule,
                                             const SieveConfig& config) {
  if (N < 10) throw precondition_error("window_count_distribution: requires N >= 10");
  if (!(lambda > 0.0)) throw precondition_error("window_count_distribution: requires lambda > 0");
  WindowDistribution out;
  out.lambda = lambda;
  out.rule = rule;
  const auto width = [&](std::uint64_t n) {
    return static_cast<std::uint64_t>(std::ceil(lambda * std::log(static_cast<double>(n))));
  };
  const std::uint64_t hmax = width(N);
  const auto seg = sieve_range(0, N + hmax + 2, config);
  const auto bump = [&](std::uint64_t c) {
    if (c >= out.counts.size()) out.counts.resize(c + 1, 0);
    ++out.counts[c];
    ++out.windows;
  };
  if (rule == WindowRule::lambda_log_N) {
    out.h = hmax;
    std::uint64_t c = 0;  // primes in (n, n + h]
    for (std::uint64_t m = 2; m <= 1 + hmax; ++m) c += seg.is_prime(m);
    for (std::uint64_t n = 1; n <= N; ++n) {
      bump(c);
      c -= seg.is_prime(n + 1);
      c += seg.is_prime(n + 1 + hmax);
    }
  } else {
    std::uint64_t n = 2, end = 2 + width(2), c = 0;
    for (std::uint64_t m = 3; m <= end; ++m) c += seg.is_prime(m);
    for (;;) {
      bump(c);
      if (n == N) break;
      c -= seg.is_prime(n + 1);
      ++n;
      const std::uint64_t new_end = n + width(n);
      for (std::uint64_t m = end + 1; m <= new_end; ++m) c += seg.is_prime(m);
      end = new_end;
    }
  }
  return out;
}

double poisson_pmf(double lambda, std::uint64_t k) {
  if (!(lambda > 0.0)) throw precondition_error("poisson_pmf: requires lambda > 0");
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

double poisson_cdf(double lambda, std::uint64_t k) {
  if (!(lambda > 0.0)) throw precondition_error("poisson_cdf: requires lambda > 0");
  return boost::math::gamma_q(static_cast<double>(k) + 1.0, lambda);
}

double poisson_tv_distance(const WindowDistribution& d, double lambda) {
  if (d.windows == 0) return 0.0;
  double tv = 0.0, covered = 0.0;
  for (std::size_t k = 0; k < d.counts.size(); ++k) {
    const double p = poisson_pmf(lambda, k);
    covered += p;
    tv += std::abs(d.frequency(k) - p);
  }
  tv += std::max(0.0, 1.0 - covered);  // Poisson mass beyond the observed range
  return 0.5 * tv;
}

double poisson_normal_check(double lambda) {
  if (!(lambda >= 10.0)) throw precondition_error("poisson_normal_check: requires lambda >= 10");
  const double sd = std::sqrt(lambda);
  const auto Phi = [&](double x) { return 0.5 * std::erfc(-(x - lambda) / (sd * std::numbers::sqrt2)); };
  const auto lo = static_cast<std::uint64_t>(std::max(0.0, std::floor(lambda - 15.0 * sd)));
  const auto hi = static_cast<std::uint64_t>(std::ceil(lambda + 15.0 * sd));
  double worst = 0.0;
  double prev = lo == 0 ? 0.0 : poisson_cdf(lambda, lo - 1);
  for (std::uint64_t k = lo; k <= hi; ++k) {
    const double F = poisson_cdf(lambda, k);
    const double g = Phi(static_cast<double>(k));
    worst = std::max({worst, std::abs(F - g), std::abs(prev - g)});
    prev = F;
  }
  return worst;
}

namespace {

// X(n) = 1 with probability 1/log n from counter n of the given stream.
bool cramer_draw(const Philox& gen, std::uint64_t n, std::uint64_t stream) {
  return gen.uniform(n, stream) < 1.0 / std::log(static_cast<double>(n));
}

}  // namespace

std::uint64_t CramerSample::count() const { return static_cast<std::uint64_t>(std::count(draws.begin(), draws.end(), true)); }

CramerSample cramer_simulate(std::uint64_t seed, std::uint64_t start, std::uint64_t length) {
  if (start < 3) throw precondition_error("cramer_simulate: requires start >= 3");
  CramerSample s;
  s.seed = seed;
  s.start = start;
  s.length = length;
  s.draws.resize(length);
  const Philox gen(seed);
  for (std::uint64_t i = 0; i < length; ++i) s.draws[i] = cramer_draw(gen, start + i, 0);
  return s;
}

CramerMomentReport cramer_moments(std::uint64_t seed, std::uint64_t N, std::uint64_t h, unsigned k_max,
                                  std::uint64_t replicas, unsigned threads) {
  if (N < 3) throw precondition_error("cramer_moments: requires N >= 3");
  if (k_max < 1 || k_max > 8) throw precondition_error("cramer_moments: requires 1 <= k_max <= 8");
  CramerMomentReport rep;
  rep.seed = seed;
  rep.N = N;
  rep.h = h;
  rep.replicas = replicas;
  // Exact cumulants of a sum of independent centered Bernoulli variables.
  double k2 = 0.0, k3 = 0.0, k4 = 0.0;
  for (std::uint64_t m = N + 1; m <= N + h; ++m) {
    const double p = 1.0 / std::log(static_cast<double>(m)), v = p * (1.0 - p);
    k2 += v;
    k3 += v * (1.0 - 2.0 * p);
    k4 += v * (1.0 - 6.0 * v);
  }
  const double exact[] = {0.0, 0.0, k2, k3, k4 + 3.0 * k2 * k2};
  std::vector<CompensatedSum> sums(k_max + 1), squares(k_max + 1);
  if (h > 0 && replicas > 0) {
    const Philox gen(seed);
    constexpr std::uint64_t kChunk = 256;
    const std::uint64_t chunks = (replicas + kChunk - 1) / kChunk;
    struct Part {
      std::vector<CompensatedSum> s, q;
    };
    const auto parts = ordered_map(chunks, threads, [&](std::size_t c) {
      Part part{std::vector<CompensatedSum>(k_max + 1), std::vector<CompensatedSum>(k_max + 1)};
      const std::uint64_t r_end = std::min<std::uint64_t>(replicas, (c + 1) * kChunk);
      for (std::uint64_t r = c * kChunk; r < r_end; ++r) {
        CompensatedSum S;
        for (std::uint64_t m = N + 1; m <= N + h; ++m)
          S += (cramer_draw(gen, m, r + 1) ? 1.0 : 0.0) - 1.0 / std::log(static_cast<double>(m));
        double pw = 1.0;
        for (unsigned k = 1; k <= k_max; ++k) {
          pw *= S.value();
          part.s[k] += pw;
          part.q[k] += pw * pw;
        }
      }
      return part;
    });
    for (const auto& p : parts)
      for (unsigned k = 1; k <= k_max; ++k) {
        sums[k] += p.s[k];
        squares[k] += p.q[k];
      }
  }
  const double scale = static_cast<double>(h) / std::log(static_cast<double>(N));
  for (unsigned k = 1; k <= k_max; ++k) {
    CramerMoment m;
    m.k = k;
    if (h > 0 && replicas > 0) {
      const double R = static_cast<double>(replicas);
      m.empirical = sums[k].value() / R;
      const double var = std::max(0.0, squares[k].value() / R - m.empirical * m.empirical);
      m.std_error = std::sqrt(var / R);
    }
    if (k % 2 == 0) {
      // k! / (2^{k/2} (k/2)!) = (k-1)!!
      double dfact = 1.0;
      for (unsigned j = k - 1; j > 1; j -= 2) dfact *= j;
      m.predicted = dfact * std::pow(scale, k / 2.0);
    } else {
      m.predicted = std::pow(scale, (k - 1) / 2.0);
    }
    m.exact = (k <= 4) ? (h == 0 ? 0.0 : exact[k]) : NAN;
    rep.moments.push_back(m);
  }
  return rep;
}

}  // namespace primelab
