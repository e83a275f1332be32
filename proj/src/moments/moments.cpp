#include "primelab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "primelab/error.hpp"
#include "primelab/numeric.hpp"
#include "primelab/parallel.hpp"
#include "primelab/summatory.hpp"

namespace primelab {

namespace {

// Lambda(m) for 0 <= m <= limit from one sieved segment plus the short
// list of higher prime powers.
class LambdaTable {
 public:
  LambdaTable(std::uint64_t limit, const SieveConfig& config) : seg_(sieve_range(0, limit + 1, config)) {
    for (const auto p : primes_up_to(isqrt(limit))) {
      const double lp = std::log(static_cast<double>(p));
      for (unsigned __int128 q = static_cast<unsigned __int128>(p) * p; q <= limit; q *= p)
        powers_.push_back({static_cast<std::uint64_t>(q), lp});
    }
    std::sort(powers_.begin(), powers_.end());
  }

  double operator()(std::uint64_t m) const {
    if (seg_.is_prime(m)) return std::log(static_cast<double>(m));
    const auto it = std::lower_bound(powers_.begin(), powers_.end(), std::pair<std::uint64_t, double>{m, -1.0});
    return (it != powers_.end() && it->first == m) ? it->second : 0.0;
  }

  const PrimeSegment& segment() const { return seg_; }
  const std::vector<std::pair<std::uint64_t, double>>& higher_powers() const { return powers_; }

 private:
  PrimeSegment seg_;
  std::vector<std::pair<std::uint64_t, double>> powers_;
};

void require_tuple(const TupleSet& H, const char* who) {
  if (H.empty()) throw precondition_error(std::string(who) + ": tuple must be nonempty");
}

}  // namespace

std::uint64_t tuple_count(const TupleSet& H, std::uint64_t x, const SieveConfig& config) {
  require_tuple(H, "tuple_count");
  if (x < 1) throw precondition_error("tuple_count: requires x >= 1");
  const auto& h = H.offsets();
  const auto h0 = static_cast<std::uint64_t>(h.front());
  const auto seg = sieve_range(0, x + static_cast<std::uint64_t>(H.max()) + 1, config);
  std::uint64_t count = 0;
  seg.for_each_prime([&](std::uint64_t m) {
    if (m < 1 + h0 || m > x + h0) return;
    const std::uint64_t n = m - h0;
    for (std::size_t i = 1; i < h.size(); ++i)
      if (!seg.is_prime(n + static_cast<std::uint64_t>(h[i]))) return;
    ++count;
  });
  return count;
}

HLPrediction hl_prediction(const TupleSet& H, std::uint64_t x, std::uint64_t prime_cutoff) {
  require_tuple(H, "hl_prediction");
  if (x < 3) throw precondition_error("hl_prediction: requires x >= 3");
  HLPrediction out;
  const auto sv = singular_series(H, std::max<std::uint64_t>(prime_cutoff, static_cast<std::uint64_t>(H.span()) + 1));
  out.singular = sv.value;
  out.vanishes = sv.vanishes;
  if (sv.vanishes) return out;
  const int k = static_cast<int>(H.size());
  const double xd = static_cast<double>(x);
  out.literal = sv.value * xd / std::pow(std::log(xd), k);
  out.integral = sv.value * log_power_integral(xd, k);
  return out;
}

double lambda_tuple_sum(const TupleSet& H, std::uint64_t x, const SieveConfig& config) {
  require_tuple(H, "lambda_tuple_sum");
  if (x < 1) throw precondition_error("lambda_tuple_sum: requires x >= 1");
  const auto& h = H.offsets();
  const auto h0 = static_cast<std::uint64_t>(h.front());
  const LambdaTable lambda(x + static_cast<std::uint64_t>(H.max()), config);
  CompensatedSum sum;
  const auto visit = [&](std::uint64_t m, double lm) {
    if (m < 1 + h0 || m > x + h0) return;
    const std::uint64_t n = m - h0;
    double prod = lm;
    for (std::size_t i = 1; i < h.size() && prod != 0.0; ++i) prod *= lambda(n + static_cast<std::uint64_t>(h[i]));
    sum += prod;
  };
  lambda.segment().for_each_prime([&](std::uint64_t p) { visit(p, std::log(static_cast<double>(p))); });
  for (const auto& [q, lp] : lambda.higher_powers()) visit(q, lp);
  return sum.value();
}

double MomentReport::piece(const std::string& name) const {
  for (const auto& [k, v] : pieces)
    if (k == name) return v;
  throw precondition_error("MomentReport: no piece named '" + name + "'");
}

namespace {

struct WindowSums {
  std::vector<CompensatedSum> centered;  // sum (W - h)^j, j = 1..r_max
  CompensatedSum W, W2, diag;            // sum W, sum W^2, sum_n sum_{m in window} Lambda(m)^2
};

WindowSums scan_windows(std::uint64_t N, std::uint64_t h, unsigned r_max, const SieveConfig& config) {
  if (N < 1) throw precondition_error("psi window: requires N >= 1");
  if (h > N) throw precondition_error("psi window: requires h <= N");
  if (r_max < 1 || r_max > 12) throw precondition_error("psi window: moment order must be in [1, 12]");
  const LambdaTable lambda(N + h + 1, config);
  // Chunks of n, each sliding its own window from scratch; reduced in order.
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 20;
  const std::uint64_t chunks = (N + kChunk - 1) / kChunk;
  const double hd = static_cast<double>(h);
  auto parts = ordered_map(chunks, config.threads, [&](std::size_t c) {
    WindowSums part;
    part.centered.resize(r_max + 1);
    const std::uint64_t n0 = 1 + c * kChunk, n1 = std::min<std::uint64_t>(N, n0 + kChunk - 1);
    CompensatedSum W, L2;  // window over (n, n + h]
    for (std::uint64_t m = n0 + 1; m <= n0 + h; ++m) {
      const double v = lambda(m);
      W += v;
      L2 += v * v;
    }
    for (std::uint64_t n = n0;; ++n) {
      const double w = W.value();
      part.W += w;
      part.W2 += w * w;
      part.diag += L2.value();
      const double d = w - hd;
      double pw = 1.0;
      for (unsigned j = 1; j <= r_max; ++j) {
        pw *= d;
        part.centered[j] += pw;
      }
      if (n == n1) break;
      if (h > 0) {
        const double out = lambda(n + 1), in = lambda(n + 1 + h);
        W += in;
        W += -out;
        L2 += in * in;
        L2 += -out * out;
      }
    }
    return part;
  });
  WindowSums total;
  total.centered.resize(r_max + 1);
  for (auto& p : parts) {
    for (unsigned j = 1; j <= r_max; ++j) total.centered[j] += p.centered[j];
    total.W += p.W;
    total.W2 += p.W2;
    total.diag += p.diag;
  }
  return total;
}

double double_factorial_odd(unsigned r) {  // (r-1)!! for even r
  double v = 1.0;
  for (unsigned j = r - 1; j > 1; j -= 2) v *= j;
  return v;
}

std::vector<MomentReport> build_reports(std::uint64_t N, std::uint64_t h, unsigned r_max, const WindowSums& s) {
  const double Nd = static_cast<double>(N), hd = static_cast<double>(h);
  const double gauss_var = h > 0 ? hd * std::log(Nd / hd) : 0.0;
  const double refined_var = h > 0 ? hd * (std::log(Nd / hd) + hl_constant_B() - 1.0) : 0.0;
  std::vector<MomentReport> out;
  for (unsigned r = 1; r <= r_max; ++r) {
    MomentReport m;
    m.r = r;
    m.N = N;
    m.h = h;
    m.empirical = s.centered[r].value() / Nd;
    const double scale = std::pow(gauss_var, r / 2.0);
    m.normalized = scale > 0.0 ? m.empirical / scale : NAN;
    if (r % 2 == 0) {
      m.predicted = double_factorial_odd(r) * scale;
      m.pieces.push_back({"refined_prediction", double_factorial_odd(r) * std::pow(refined_var, r / 2.0)});
    } else {
      m.predicted = 0.0;
    }
    m.ratio = m.predicted != 0.0 ? m.empirical / m.predicted : NAN;
    m.pieces.push_back({"h_guidance_N_pow_1_over_r", std::pow(Nd, 1.0 / r)});
    if (r == 1) m.pieces.push_back({"mean_window", s.W.value() / Nd});
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

MomentReport psi_window_variance(std::uint64_t N, std::uint64_t h, const SieveConfig& config) {
  const auto s = scan_windows(N, h, 2, config);
  const double Nd = static_cast<double>(N), hd = static_cast<double>(h);
  MomentReport m;
  m.r = 2;
  m.N = N;
  m.h = h;
  m.empirical = s.centered[2].value() / Nd;
  m.predicted = h > 0 ? hd * (std::log(Nd / hd) + hl_constant_B() - 1.0) : 0.0;
  m.ratio = m.predicted != 0.0 ? m.empirical / m.predicted : NAN;
  m.normalized = h > 0 ? m.empirical / (hd * std::log(Nd / hd)) : NAN;
  const double mean_W = s.W.value() / Nd, mean_W2 = s.W2.value() / Nd, diag = s.diag.value() / Nd;
  const double cramer = h > 0 ? hd * std::log(Nd) : 0.0;
  // empirical = diagonal + off_diagonal + centering
  m.pieces = {{"diagonal", diag},
              {"off_diagonal", mean_W2 - diag},
              {"centering", -2.0 * hd * mean_W + hd * hd},
              {"mean_window", mean_W},
              {"cramer_prediction", cramer},
              {"empirical_over_cramer", cramer > 0 ? m.empirical / cramer : NAN}};
  return m;
}

std::vector<MomentReport> psi_window_moments(std::uint64_t N, std::uint64_t h, unsigned r_max,
                                             const SieveConfig& config) {
  return build_reports(N, h, r_max, scan_windows(N, h, r_max, config));
}

MomentReport psi_window_moment(std::uint64_t N, std::uint64_t h, unsigned r, const SieveConfig& config) {
  if (r < 1) throw precondition_error("psi_window_moment: requires r >= 1");
  return psi_window_moments(N, h, r, config).back();
}

unsigned __int128 surjection_count(unsigned r, unsigned k) {
  if (k < 1 || k > r || r > 20) throw precondition_error("surjection_count: requires 1 <= k <= r <= 20");
  // sum_j (-1)^j C(k, j) (k - j)^r; every partial sum fits in 128 bits.
  __int128 total = 0, binom = 1;
  for (unsigned j = 0; j <= k; ++j) {
    __int128 pw = 1;
    for (unsigned i = 0; i < r; ++i) pw *= (k - j);
    total += (j % 2 == 0 ? 1 : -1) * binom * pw;
    binom = binom * (k - j) / (j + 1);
  }
  return static_cast<unsigned __int128>(total);
}

std::string to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

namespace {

// Calls fn on every increasing k-subset of {1, ..., n}.
void for_each_combination(std::uint64_t n, unsigned k, const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
  if (k == 0 || k > n) return;
  std::vector<std::uint64_t> c(k);
  for (unsigned i = 0; i < k; ++i) c[i] = i + 1;
  for (;;) {
    fn(c);
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + 1 + static_cast<unsigned>(i)) --i;
    if (i < 0) return;
    ++c[static_cast<std::size_t>(i)];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// Compositions of r into k positive parts.
std::vector<std::vector<unsigned>> compositions(unsigned r, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned parts) {
    if (parts == 1) {
      cur.push_back(left);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (unsigned m = 1; m + parts - 1 <= left; ++m) {
      cur.push_back(m);
      rec(left - m, parts - 1);
      cur.pop_back();
    }
  };
  rec(r, k);
  return out;
}

double binomial(std::uint64_t n, unsigned k) {
  if (k > n) return 0.0;
  double v = 1.0;
  for (unsigned i = 0; i < k; ++i) v = v * static_cast<double>(n - i) / (i + 1);
  return v;
}

}  // namespace

MomentDecomposition moment_decomposition(std::uint64_t N, std::uint64_t h, unsigned r) {
  if (r < 1 || r > 6) throw precondition_error("moment_decomposition: requires 1 <= r <= 6");
  if (N < 1 || N > 10'000'000) throw precondition_error("moment_decomposition: requires 1 <= N <= 1e7");
  if (h < 1) throw precondition_error("moment_decomposition: requires h >= 1");
  double work = 0.0;
  for (unsigned k = 1; k <= std::min<std::uint64_t>(r, h); ++k)
    work += binomial(h, k) * binomial(r - 1, k - 1) * static_cast<double>(N) * k;
  if (work > 2e8) throw capacity_error("moment_decomposition: expansion exceeds 2e8 terms");

  MomentDecomposition out;
  out.r = r;
  out.N = N;
  out.h = h;
  const std::uint64_t L = N + h;
  const LambdaTable lambda(L, SieveConfig{});
  std::vector<std::uint8_t> prime(L + 1, 0);
  std::vector<double> l0(L + 1, 0.0);
  for (std::uint64_t m = 1; m <= L; ++m) {
    prime[m] = lambda.segment().is_prime(m);
    l0[m] = lambda(m) - 1.0;
  }
  const double Nd = static_cast<double>(N);
  // direct sides
  CompensatedSum dc, dl;
  for (std::uint64_t n = 1; n <= N; ++n) {
    std::uint64_t c = 0;
    double w = 0.0;
    for (std::uint64_t l = 1; l <= h; ++l) {
      c += prime[n + l];
      w += l0[n + l];
    }
    dc += std::pow(static_cast<double>(c), r);
    dl += std::pow(w, r);
  }
  out.direct_count = dc.value() / Nd;
  out.direct_lambda0 = dl.value() / Nd;
  // reconstructions
  double fact_r = 1.0;
  for (unsigned i = 2; i <= r; ++i) fact_r *= i;
  CompensatedSum rc, rl;
  for (unsigned k = 1; k <= std::min<std::uint64_t>(r, h); ++k) {
    const double sigma = static_cast<double>(surjection_count(r, k));
    const auto comps = compositions(r, k);
    std::vector<double> multinomial;
    for (const auto& m : comps) {
      double v = fact_r;
      for (auto mi : m)
        for (unsigned i = 2; i <= mi; ++i) v /= i;
      multinomial.push_back(v);
    }
    std::uint64_t tuples = 0;
    CompensatedSum lam;
    for_each_combination(h, k, [&](const std::vector<std::uint64_t>& ls) {
      for (std::uint64_t n = 1; n <= N; ++n) {
        bool all = true;
        for (auto l : ls) all = all && prime[n + l];
        tuples += all;
      }
      for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        CompensatedSum inner;
        for (std::uint64_t n = 1; n <= N; ++n) {
          double prod = 1.0;
          for (unsigned i = 0; i < k; ++i) {
            const double v = l0[n + ls[i]];
            for (unsigned e = 0; e < comps[ci][i]; ++e) prod *= v;
          }
          inner += prod;
        }
        lam += multinomial[ci] * inner.value();
      }
    });
    const double term = sigma * static_cast<double>(tuples) / Nd;
    out.count_terms.push_back(term);
    rc += term;
    rl += lam.value() / Nd;
  }
  out.reconstructed_count = rc.value();
  out.reconstructed_lambda0 = rl.value();
  return out;
}

namespace {

struct PatternSums {
  CompensatedSum s, s0;
  double tail_s = 0.0, tail_s0 = 0.0;
};

// Sums over k-subsets of [1, h] (as patterns weighted by h - span) of S and S0.
PatternSums distinct_pattern_sums(unsigned k, std::uint64_t h, std::uint64_t cutoff) {
  if (k != 2 && k != 3) throw precondition_error("distinct sums: requires k in {2, 3}");
  if (h < k) throw precondition_error("distinct sums: requires h >= k");
  if ((k == 2 && h > 10'000) || (k == 3 && h > 1'000)) throw capacity_error("distinct sums: h above enumeration guard");
  if (cutoff <= h) throw precondition_error("distinct sums: prime_cutoff must exceed h");
  std::vector<double> pair(h, 0.0);
  for (std::uint64_t l = 1; l < h; ++l) pair[l] = singular_series_pair(l, cutoff);
  const double tail2 = singular_series({0, 2}, cutoff).tail_bound;
  PatternSums out;
  const double hd = static_cast<double>(h);
  if (k == 2) {
    for (std::uint64_t l = 1; l < h; ++l) {
      const double w = hd - static_cast<double>(l);
      out.s += w * pair[l];
      out.s0 += w * (pair[l] - 1.0);
      out.tail_s += w * pair[l] * tail2;
    }
    out.tail_s0 = out.tail_s;
    return out;
  }
  const double tail3 = singular_series({0, 2, 6}, cutoff).tail_bound;
  for (std::uint64_t a = 1; a + 1 < h; ++a)
    for (std::uint64_t b = a + 1; b < h; ++b) {
      const auto sv = singular_series({0, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)}, cutoff);
      const double w = hd - static_cast<double>(b);
      const double pairs = pair[a] + pair[b] + pair[b - a];
      out.s += w * sv.value;
      out.s0 += w * (sv.value - pairs + 2.0);  // S0 = S3 - sum S2 + 3 S1 - S0(empty)
      out.tail_s += w * sv.value * tail3;
      out.tail_s0 += w * (sv.value * tail3 + pairs * tail2);
    }
  return out;
}

}  // namespace

DistinctSum s0_distinct_sum(unsigned k, std::uint64_t h, std::uint64_t prime_cutoff) {
  const auto p = distinct_pattern_sums(k, h, prime_cutoff);
  const double fact = k == 2 ? 2.0 : 6.0, hd = static_cast<double>(h);
  DistinctSum out;
  out.exact = fact * p.s0.value();
  out.tail_bound = fact * p.tail_s0;
  out.scale = std::pow(hd * std::log(hd), k / 2.0);
  out.predicted = k == 2 ? -hd * std::log(hd) + (hl_constant_B() + 1.0) * hd : 0.0;
  return out;
}

DistinctSum distinct_tuple_sum(unsigned k, std::uint64_t h, std::uint64_t prime_cutoff) {
  const auto p = distinct_pattern_sums(k, h, prime_cutoff);
  const double fact = k == 2 ? 2.0 : 6.0, hd = static_cast<double>(h);
  const double c = k == 2 ? 1.0 : 3.0;  // C(k, 2)
  DistinctSum out;
  out.exact = fact * p.s.value();
  out.tail_bound = fact * p.tail_s;
  out.scale = std::pow(hd, k - 1.5);
  out.predicted = std::pow(hd, k) - c * std::pow(hd, k - 1) * std::log(hd) + c * hl_constant_B() * std::pow(hd, k - 1);
  return out;
}

}  // namespace primelab
