// Acceptance checks: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "primelab/arithmetic.hpp"
#include "primelab/gaps.hpp"
#include "primelab/maier.hpp"
#include "primelab/moments.hpp"
#include "primelab/numeric.hpp"
#include "primelab/random.hpp"
#include "primelab/singular.hpp"
#include "primelab/summatory.hpp"
#include "primelab/zero_table.hpp"
#include "primelab/zeta.hpp"

using namespace primelab;

namespace {

std::string zeros_path = PRIMELAB_DEFAULT_ZEROS;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (detail.tellp() > 0) detail << "; ";
    detail << what << (ok ? "" : " [miss]");
  }
};

std::string g(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void c01(Outcome& o) {
  std::uint64_t cases = 0, mismatches = 0;
  std::vector<TupleSet> tuples;
  for (std::uint64_t t = 0; t < 500; ++t) {
    PhiloxStream s(20240101, t);
    const auto k = 1 + s.below(6);
    std::set<std::int64_t> offs;
    while (offs.size() < k) offs.insert(static_cast<std::int64_t>(s.below(120)));
    tuples.emplace_back(std::vector<std::int64_t>(offs.begin(), offs.end()));
  }
  for (std::uint64_t q = 1; q <= 200; ++q) {
    if (!is_squarefree(q)) continue;
    for (const auto& H : tuples) {
      std::uint64_t brute = 0;
      for (std::uint64_t n = 0; n < q; ++n) {
        bool ok = true;
        for (auto h : H.offsets())
          if (std::gcd(n + static_cast<std::uint64_t>(h), q) != 1) {
            ok = false;
            break;
          }
        brute += ok;
      }
      ++cases;
      mismatches += brute != pattern_count_mod(H, q);
    }
  }
  o.check(mismatches == 0, std::to_string(cases) + " (q, H) pairs, " + std::to_string(mismatches) + " mismatches");
}

void c02(Outcome& o) {
  const auto v = singular_series(TupleSet{0, 2}, 10'000'000);
  o.check(std::abs(v.value - 1.320324) <= 1e-5, "S({0,2}) = " + g(v.value, 10));
  o.check(v.tail_bound * v.value <= 1e-5, "certified tail " + g(v.tail_bound * v.value, 3));
}

void c03(Outcome& o) {
  const double B = hl_constant_B();
  o.check(std::abs(B - (-1.41509273131088)) < 1e-12, "B = " + g(B, 13));
  for (std::uint64_t h : {1000ull, 10000ull, 100000ull}) {
    const auto e = pair_sum_expansion(h);
    const double err = std::abs(e.exact - e.predicted), bound = 10.0 * std::pow(static_cast<double>(h), 0.6);
    o.check(err <= bound, "h=" + std::to_string(h) + " |diff| " + g(err, 4) + " <= " + g(bound, 4));
  }
}

void c04(Outcome& o) {
  const auto hist = gap_histogram(100'000'000, Histogram::parse("0:5:0.25").edges, GapNormalization::log_p);
  const double f = hist.fraction_between(0.0, 1.0), tv = exponential_tv_distance(hist);
  o.check(std::abs(f - (1.0 - std::exp(-1.0))) <= 0.03, "fraction[0,1] " + g(f, 5));
  o.check(tv < 0.06, "TV " + g(tv, 4) + " < 0.06");
}

void c05(Outcome& o) {
  const auto d = window_count_distribution(10'000'000, 1.0);
  const double e = std::exp(-1.0);
  o.check(std::abs(d.frequency(0) - e) <= 0.02, "P0 " + g(d.frequency(0), 4));
  o.check(std::abs(d.frequency(1) - e) <= 0.02, "P1 " + g(d.frequency(1), 4));
  o.check(std::abs(d.frequency(2) - e / 2) <= 0.01, "P2 " + g(d.frequency(2), 4) + " (h=" + std::to_string(d.h) + ")");
}

void c06(Outcome& o) {
  const auto v = psi_window_variance(10'000'000, 1000);
  const double hl = v.empirical / v.predicted, cr = v.piece("empirical_over_cramer");
  o.check(hl >= 0.9 && hl <= 1.1, "empirical/HL " + g(hl, 5));
  o.check(cr < 0.85, "empirical/Cramer " + g(cr, 4));
}

void c07(Outcome& o) {
  for (auto [N, h, r] : {std::tuple{10000ull, 20ull, 2u}, std::tuple{1000ull, 10ull, 3u}}) {
    const auto d = moment_decomposition(N, h, r);
    const double e1 = relative_difference(d.reconstructed_count, d.direct_count);
    const double e2 = relative_difference(d.reconstructed_lambda0, d.direct_lambda0);
    const std::string p = "(" + std::to_string(N) + "," + std::to_string(h) + "," + std::to_string(r) + ")";
    o.check(e1 <= 1e-9, p + " counts " + g(e1, 2));
    o.check(e2 <= 1e-9, p + " Lambda0 " + g(e2, 2));
  }
}

void c08(Outcome& o) {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 40; ++t) {
    PhiloxStream s(8, t);
    const auto k = 1 + t % 5;
    std::set<std::int64_t> offs;
    while (offs.size() < k) offs.insert(static_cast<std::int64_t>(s.below(60)));
    const std::vector<std::int64_t> h(offs.begin(), offs.end());
    // S(H) = sum over subsets J of S0(J).
    double sum = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
      std::vector<std::int64_t> J;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) J.push_back(h[i]);
      sum += s0_transform(TupleSet(J), 100'000);
    }
    const double direct = singular_series(TupleSet(h), 100'000).value;
    worst = std::max(worst, std::abs(sum - direct) / std::max(1.0, std::abs(direct)));
  }
  o.check(worst <= 1e-9, "inversion round trip worst " + g(worst, 2));
  const std::uint64_t h = 1000, cutoff = 1'000'000;
  const auto s0 = s0_distinct_sum(2, h, cutoff);
  const double oracle = 2.0 * pair_sum_expansion(h, cutoff).exact - static_cast<double>(h * h - h);
  const double rel = relative_difference(s0.exact, oracle);
  o.check(rel <= 1e-6, "k=2 sum " + g(s0.exact, 8) + " vs oracle " + g(oracle, 8));
}

void c09(Outcome& o) {
  std::vector<double> zeros;
  std::string source;
  if (std::filesystem::exists(zeros_path)) {
    zeros = load_zeros(zeros_path).ordinates();
    source = zeros_path;
  } else {
    zeros = compute_zeros(100000);
    source = "computed in-process";
  }
  const ZeroTable table(std::move(zeros));
  o.check(table.count() >= 100000, std::to_string(table.count()) + " zeros (" + source + ")");
  double worst = 0.0;
  for (int i = 0; i < 32; ++i) {
    const double x = std::floor(std::pow(10.0, 3.0 + 2.0 * i / 31.0)) + 0.5;
    const double psi = summatory(static_cast<std::uint64_t>(x)).psi_x;
    worst = std::max(worst, std::abs(psi_explicit(x, table.t_max(), table) - psi) / psi);
  }
  o.check(worst < 0.005, "psi worst rel " + g(worst, 3));
  const auto n = n_of_t_check(table, 100.0);
  o.check(n.observed == 29 && std::abs(n.relative_gap) <= 0.05, "N(100) = " + std::to_string(n.observed) +
                                                                      " vs " + g(n.predicted, 6));
}

void c10(Outcome& o) {
  std::size_t moduli = 0, both = 0;
  for (double y : {250.0, 500.0, 1000.0})
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto scan = scan_E_u(build_modulus_dyadic_half(y, seed), y, 1.0, 6.0, 0.05);
      ++moduli;
      both += scan.both_signs();
      if (seed == 1) o.check(true, "y=" + g(y) + " scanned to u=" + g(std::min(6.0, scan.u_limit), 3));
    }
  o.check(both == moduli, std::to_string(both) + "/" + std::to_string(moduli) + " moduli with both signs");
  std::size_t checked = 0, violations = 0;
  for (auto [lo, hi] : {std::pair{2ull, 30ull}, std::pair{2ull, 60ull}, std::pair{11ull, 80ull}, std::pair{3ull, 72ull}}) {
    const auto P = build_modulus_interval(lo, hi);
    if (P.divisor_count_saturated || P.divisor_count > (1ull << 20)) continue;
    for (std::uint64_t h = 1; h <= 10'000'000; h = h * 3 + 1) {
      const double dev = std::abs(static_cast<double>(coprime_count(P, h)) - static_cast<double>(h) * P.phi_ratio);
      ++checked;
      violations += dev > static_cast<double>(P.divisor_count);
    }
  }
  o.check(checked > 0 && violations == 0,
          "coprime deviation <= d(P): " + std::to_string(checked) + " cases, " + std::to_string(violations) + " over");
}

void c11(Outcome& o) {
  const auto P = FactoredModulus::from_primes({2, 3});
  const auto a = zeta_p_identity_check(2.0, P, 10.0, 5.0, 1e-3);
  o.check(a.gap < 1e-3, "s=2 gap " + g(a.gap, 3) + " (tail <= " + g(a.tail_bound, 2) + ")");
  const auto b = zeta_p_identity_check({0.8, 0.3}, P, 10.0, 4.0, 1e-2);
  o.check(b.gap < 1e-2, "s=0.8+0.3i gap " + g(b.gap, 3) + " (tail <= " + g(b.tail_bound, 2) + ")");
}

void c12(Outcome& o) {
  const auto d = inclusion_exclusion_demo();
  o.check(std::abs(d.difference - 1.90e-4) <= 1e-6, "difference " + g(d.difference, 6));
}

void c13(Outcome& o) {
  const auto hist = residue_gap_distribution(9'699'690, Histogram::parse("0:5:0.25").edges);
  const double f = hist.fraction_between(0.0, 1.0);
  o.check(std::abs(f - (1.0 - std::exp(-1.0))) <= 0.05, "mass[0,1] " + g(f, 4));
  const auto m6 = mv_moment(6, 2, 2);
  o.check(m6.direct == 4.0 / 3.0, "M2(6;2) = " + g(m6.direct, 15));
  const auto m = mv_moment(210, 30, 2);
  o.check(m.has_oracle && relative_difference(m.direct, m.oracle) <= 1e-9,
          "M2(210;30) " + g(m.direct, 12) + " vs " + g(m.oracle, 12));
}

void c14(Outcome& o) {
  const auto ones = ArithSequence::ones();
  const SequenceTable t1(ones, 1'000'000);
  double worst = 0.0;
  for (std::uint64_t d = 1; d <= 100; ++d) {
    const auto r = multiples_report(ones, t1, d);
    worst = std::max(worst, std::abs(r.observed - r.predicted));
  }
  for (std::uint64_t q = 1; q <= 30; ++q)
    for (std::uint64_t a = 0; a < q; ++a) {
      const auto r = progression_report(ones, t1, q, a);
      worst = std::max(worst, std::abs(r.observed - r.predicted));
    }
  o.check(worst <= 1.0, "ones worst additive error " + g(worst, 3));
  const auto primes = ArithSequence::primes();
  const auto pr = progression_report(primes, SequenceTable(primes, 1'000'000), 4, 1);
  o.check(pr.relative_deviation < 0.01, "primes A(1e6;4,1) dev " + g(pr.relative_deviation, 3));
  const auto two = ArithSequence::two_squares();
  const auto m9 = multiples_report(two, SequenceTable(two, 10'000'000), 9);
  const double target = two.density(9) / 9.0;
  const double rel = std::abs(m9.empirical_share - target) / target;
  o.check(rel < 0.05, "two squares A9/A " + g(m9.empirical_share, 5) + " vs h(9)/9 " + g(target, 5) + " rel " +
                          g(rel, 3));
}

struct Criterion {
  const char* name;
  double limit_seconds;
  void (*run)(Outcome&);
};

const Criterion criteria[] = {
    {"mod-q admissible residue count", 10, c01},  {"twin singular series", 5, c02},
    {"pair sum expansion", 120, c03},             {"gap law", 120, c04},
    {"Poisson window counts", 60, c05},           {"variance vs Cramer", 120, c06},
    {"moment identity", 10, c07},                 {"S0 machinery", 60, c08},
    {"explicit formula", 60, c09},                {"E(u) oscillation", 60, c10},
    {"zeta_P identity", 10, c11},                 {"illustration constant", 0.001, c12},
    {"reduced residues", 120, c13},               {"uncertainty framework", 120, c14},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"primelab acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-14)")->check(CLI::Range(1, 14));
  app.add_option("--zeros", zeros_path, "zero ordinate file")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (int i = 1; i <= 14; ++i) {
    if (only && i != only) continue;
    const auto& c = criteria[i - 1];
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < c.limit_seconds, "runtime " + g(secs, 3) + " s < " + g(c.limit_seconds) + " s");
    std::printf("%s c%02d %s: %s\n", o.pass ? "PASS" : "FAIL", i, c.name, o.detail.str().c_str());
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
