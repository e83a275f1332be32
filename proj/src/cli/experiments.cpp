#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "primelab/cli.hpp"
#include "primelab/error.hpp"
#include "primelab/gaps.hpp"
#include "primelab/maier.hpp"
#include "primelab/moments.hpp"
#include "primelab/numeric.hpp"
#include "primelab/singular.hpp"
#include "primelab/summatory.hpp"
#include "primelab/zero_table.hpp"

namespace primelab::cli {

std::vector<std::string> subcommands() {
  return {"gaps", "poisson", "singular", "gallagher", "tuples", "variance",
          "moments", "zeros", "maier", "uncertainty", "residues"};
}

std::string to_string(Check c) {
  switch (c) {
    case Check::info: return "info";
    case Check::abs_tol: return "abs";
    case Check::rel_tol: return "rel";
    case Check::upper: return "upper";
    case Check::equal: return "equal";
  }
  return "?";
}

bool RunResult::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.pass; });
}

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

class Recorder {
 public:
  Recorder(const RunConfig& c, RunResult& r) : config_(c), result_(r) {}

  // `tolerance` is the default; config.tolerances[id] overrides it.
  void row(const std::string& id, const std::string& params, double observed, double predicted, Check check,
           double tolerance = 0.0) {
    ResultRow r;
    r.experiment = id;
    r.parameters = params;
    r.observed = observed;
    r.predicted = predicted;
    r.ratio = predicted != 0.0 ? observed / predicted : NAN;
    if (const auto it = config_.tolerances.find(id); it != config_.tolerances.end()) tolerance = it->second;
    r.tolerance = tolerance;
    r.check = check;
    switch (check) {
      case Check::info: r.pass = true; break;
      case Check::abs_tol: r.pass = std::abs(observed - predicted) <= tolerance; break;
      case Check::rel_tol: r.pass = std::abs(observed - predicted) <= tolerance * std::abs(predicted); break;
      case Check::upper: r.pass = observed <= predicted; break;
      case Check::equal: r.pass = observed == predicted; break;
    }
    result_.rows.push_back(std::move(r));
  }

  Curve& curve(const std::string& name, std::vector<std::string> columns) {
    result_.curves.push_back({name, std::move(columns), {}});
    return result_.curves.back();
  }

 private:
  const RunConfig& config_;
  RunResult& result_;
};

SieveConfig sieve_config(const RunConfig& c) {
  SieveConfig s;
  s.threads = c.threads;
  return s;
}

void run_gaps(const RunConfig& c, Recorder& rec) {
  const auto norm = parse_gap_normalization(c.normalization);
  const auto hist = gap_histogram(c.N, Histogram::parse(c.bins).edges, norm, sieve_config(c));
  const std::string p = "N=" + std::to_string(c.N) + " norm=" + c.normalization;
  auto& curve = rec.curve("gap_density", {"lo", "hi", "observed", "exponential"});
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    const double a = hist.edges[i], b = hist.edges[i + 1];
    const double target = exponential_mass(a, b);
    rec.row("bin[" + fmt(a) + "," + fmt(b) + ")", p, hist.fraction(i), target, Check::info);
    curve.rows.push_back({a, b, hist.fraction(i), target});
  }
  const auto& e = hist.edges;
  if (std::find(e.begin(), e.end(), 0.0) != e.end() && std::find(e.begin(), e.end(), 1.0) != e.end())
    rec.row("fraction_0_1", p, hist.fraction_between(0.0, 1.0), -std::expm1(-1.0), Check::abs_tol, 0.03);
  rec.row("tv_distance", p, exponential_tv_distance(hist), 0.06, Check::upper);
}

void run_poisson(const RunConfig& c, Recorder& rec) {
  const auto rule = parse_window_rule(c.window_rule);
  const auto d = window_count_distribution(c.N, c.lambda, rule, sieve_config(c));
  const std::string p = "N=" + std::to_string(c.N) + " lambda=" + fmt(c.lambda) + " rule=" + c.window_rule +
                        " h=" + (rule == WindowRule::lambda_log_N ? std::to_string(d.h) : std::string("variable"));
  auto& curve = rec.curve("window_counts", {"k", "observed", "poisson"});
  for (std::size_t k = 0; k <= std::max<std::size_t>(c.k, 2); ++k) {
    const double target = poisson_pmf(c.lambda, k);
    rec.row("P(" + std::to_string(k) + ")", p, d.frequency(k), target, Check::abs_tol, k <= 1 ? 0.02 : 0.01);
    curve.rows.push_back({static_cast<double>(k), d.frequency(k), target});
  }
  rec.row("tv_distance", p, poisson_tv_distance(d, c.lambda), 0.0, Check::info);
}

void run_singular(const RunConfig& c, Recorder& rec) {
  const auto H = TupleSet::parse(c.tuple);
  const auto v = singular_series(H, c.cutoff);
  const std::string p = "tuple=" + c.tuple + " cutoff=" + std::to_string(c.cutoff);
  rec.row("singular_series", p, v.value, 0.0, Check::info);
  rec.row("tail_bound", p, v.tail_bound, 1e-6, Check::upper);
  rec.row("vanishes", p, v.vanishes ? 1.0 : 0.0, 0.0, Check::info);
}

void run_gallagher(const RunConfig& c, Recorder& rec) {
  const auto g = gallagher_average(c.k, c.h, c.cutoff, c.threads);
  const std::string p = "k=" + std::to_string(c.k) + " h=" + std::to_string(c.h) + " cutoff=" + std::to_string(c.cutoff);
  // Three-term expansion of the ordered-distinct sum, divided by the
  // number of ordered tuples.
  double predicted = 1.0;
  if (c.k >= 2) {
    const double hd = static_cast<double>(c.h), ck2 = c.k * (c.k - 1) / 2.0;
    double falling = 1.0;
    for (unsigned i = 0; i < c.k; ++i) falling *= hd - i;
    predicted = (std::pow(hd, c.k) - ck2 * std::pow(hd, c.k - 1) * (std::log(hd) - hl_constant_B())) / falling;
  }
  rec.row("gallagher_ratio", p, g.ratio, predicted, Check::rel_tol, 0.01);
  rec.row("gallagher_sum", p, g.sum_S, 0.0, Check::info);
  rec.row("gallagher_tail_bound", p, g.tail_bound, 0.0, Check::info);
}

void run_tuples(const RunConfig& c, Recorder& rec) {
  const auto H = TupleSet::parse(c.tuple);
  const auto hl = hl_prediction(H, c.x, c.cutoff);
  const std::string p = "tuple=" + c.tuple + " x=" + std::to_string(c.x);
  const double count = static_cast<double>(tuple_count(H, c.x, sieve_config(c)));
  if (hl.vanishes) {
    rec.row("tuple_count", p, count, 0.0, Check::info);
    return;
  }
  rec.row("tuple_count", p, count, hl.integral, Check::rel_tol, 0.05);
  rec.row("tuple_count_literal", p, count, hl.literal, Check::info);
  rec.row("lambda_tuple_sum", p, lambda_tuple_sum(H, c.x, sieve_config(c)), hl.singular * static_cast<double>(c.x),
          Check::rel_tol, 0.05);
}

void run_variance(const RunConfig& c, Recorder& rec) {
  const auto v = psi_window_variance(c.N, c.h, sieve_config(c));
  const std::string p = "N=" + std::to_string(c.N) + " h=" + std::to_string(c.h);
  rec.row("variance", p, v.empirical, v.predicted, Check::rel_tol, 0.1);
  rec.row("variance_over_cramer", p, v.piece("empirical_over_cramer"), 0.85, Check::upper);
  for (const auto& [name, value] : v.pieces) rec.row("piece:" + name, p, value, 0.0, Check::info);
}

void run_moments(const RunConfig& c, Recorder& rec) {
  const std::string p = "N=" + std::to_string(c.N) + " h=" + std::to_string(c.h);
  for (const auto& m : psi_window_moments(c.N, c.h, c.r, sieve_config(c))) {
    const std::string id = "moment_" + std::to_string(m.r);
    if (m.r % 2 == 0) {
      rec.row(id, p, m.empirical, m.predicted, Check::rel_tol, 0.25);
      rec.row(id + "_refined", p, m.empirical, m.piece("refined_prediction"), Check::info);
    } else {
      rec.row(id + "_normalized", p, m.normalized, 0.0, Check::abs_tol, 0.3);
    }
  }
  if (c.identity) {
    const auto d = moment_decomposition(c.N, c.h, c.r);
    const std::string q = p + " r=" + std::to_string(c.r);
    rec.row("identity_counts", q, d.reconstructed_count, d.direct_count, Check::rel_tol, 1e-9);
    rec.row("identity_lambda0", q, d.reconstructed_lambda0, d.direct_lambda0, Check::rel_tol, 1e-9);
  }
}

void run_zeros(const RunConfig& c, Recorder& rec) {
  if (c.zeros_path.empty()) throw precondition_error("zeros: --zeros <path> is required");
  const auto table = load_zeros(c.zeros_path);
  const std::string p = "zeros=" + std::to_string(table.count());
  const auto n = n_of_t_check(table, c.T);
  rec.row("N(T)", p + " T=" + fmt(c.T), static_cast<double>(n.observed), n.predicted, Check::rel_tol, 0.05);
  auto& curve = rec.curve("psi_explicit", {"x", "psi", "explicit"});
  const unsigned pts = std::max(2u, c.points);
  for (unsigned i = 0; i < pts; ++i) {
    const double x = std::floor(std::pow(10.0, 3.0 + 2.0 * i / (pts - 1))) + 0.5;
    const double psi = summatory(static_cast<std::uint64_t>(x)).psi_x;
    const double ex = psi_explicit(x, table.t_max(), table);
    rec.row("psi_explicit[" + fmt(x) + "]", p + " T=" + fmt(table.t_max()), ex, psi, Check::rel_tol, 0.005);
    curve.rows.push_back({x, psi, ex});
  }
  if (table.t_max() >= 100.0 && 1e4 >= std::pow(100.0, 1.1)) {
    const auto m = cosine_sum_moment(1e4, 100.0, 2, table);
    rec.row("cosine_moment_k2", "X=1e4 T=100", m.empirical, m.predicted, Check::info);
  }
  const auto sim = chebyshev_model_sim(table.truncated(1000), std::max<std::uint64_t>(c.samples, 1000), c.seed, false,
                                       c.threads);
  const std::string s = "seed=" + std::to_string(c.seed) + " samples=" + std::to_string(sim.samples);
  rec.row("bias_model_mean", s, sim.mean, 0.0, Check::abs_tol, sim.mean_bound);
  rec.row("bias_model_variance", s, sim.variance, sim.predicted_variance, Check::rel_tol, 0.1);
}

void run_maier(const RunConfig& c, Recorder& rec) {
  auto& curve = rec.curve("E_u", {"seed", "u", "E"});
  for (unsigned s = 0; s < c.seeds; ++s) {
    const std::uint64_t seed = c.seed + s;
    const auto P = build_modulus_dyadic_half(c.y, seed);
    const auto scan = scan_E_u(P, c.y, c.u_lo, c.u_hi, c.u_step);
    for (const auto& pt : scan.points) curve.rows.push_back({static_cast<double>(seed), pt.u, pt.E});
    const std::string p = "y=" + fmt(c.y) + " seed=" + std::to_string(seed) + " primes=" + std::to_string(P.size()) +
                          " u<=" + fmt(std::min(c.u_hi, scan.u_limit));
    rec.row("E_both_signs[" + std::to_string(seed) + "]", p, scan.both_signs() ? 1.0 : 0.0, 1.0, Check::equal);
  }
  const auto P23 = FactoredModulus::from_primes({2, 3});
  const auto id2 = zeta_p_identity_check(2.0, P23, 10.0, 5.0, 1e-3);
  rec.row("zeta_p_identity[s=2]", "P={2,3} y=10 U=5", id2.gap, 1e-3, Check::upper);
  const auto idc = zeta_p_identity_check({0.8, 0.3}, P23, 10.0, 4.0, 1e-2);
  rec.row("zeta_p_identity[s=0.8+0.3i]", "P={2,3} y=10 U=4", idc.gap, 1e-2, Check::upper);
  const auto demo = inclusion_exclusion_demo();
  rec.row("ie_demo_difference", "", demo.difference, 1.90e-4, Check::abs_tol, 1e-6);
  const auto M = maier_matrix(c.x, FactoredModulus::from_primes({2, 3, 5, 7}), 210);
  const std::string mp = "x=" + std::to_string(c.x) + " P=210 h=210";
  rec.row("matrix_double_count", mp, static_cast<double>(M.row_total), static_cast<double>(M.column_total), Check::equal);
  rec.row("matrix_row_ratio", mp, static_cast<double>(M.row_total), M.row_prediction, Check::rel_tol, 0.2);
  rec.row("matrix_column_ratio", mp, static_cast<double>(M.column_total), M.column_prediction, Check::info);
}

void run_uncertainty(const RunConfig& c, Recorder& rec) {
  const auto kind = parse_sequence_kind(c.sequence);
  const auto seq = ArithSequence::of_kind(kind);
  const SequenceTable t(seq, c.x);
  const double tol = kind == SequenceKind::ones ? 1.0 : (kind == SequenceKind::primes ? 0.01 : 0.05);
  const Check check = kind == SequenceKind::ones ? Check::abs_tol : Check::rel_tol;
  const auto m = multiples_report(seq, t, c.d);
  rec.row("multiples", c.sequence + " " + m.parameters, m.observed, m.predicted, check, tol);
  const auto pr = progression_report(seq, t, c.modulus, c.residue);
  if (pr.has_prediction)
    rec.row("progression", c.sequence + " " + pr.parameters, pr.observed, pr.predicted, check, tol);
  else
    rec.row("progression_share", c.sequence + " " + pr.parameters + " (no f_q prediction)", pr.empirical_share, 0.0,
            Check::info);
}

void run_residues(const RunConfig& c, Recorder& rec) {
  const auto hist = residue_gap_distribution(c.q, Histogram::parse(c.bins).edges);
  const std::string p = "q=" + std::to_string(c.q);
  auto& curve = rec.curve("residue_gaps", {"lo", "hi", "observed", "exponential"});
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    const double a = hist.edges[i], b = hist.edges[i + 1];
    rec.row("bin[" + fmt(a) + "," + fmt(b) + ")", p, hist.fraction(i), exponential_mass(a, b), Check::info);
    curve.rows.push_back({a, b, hist.fraction(i), exponential_mass(a, b)});
  }
  const auto& e = hist.edges;
  if (std::find(e.begin(), e.end(), 0.0) != e.end() && std::find(e.begin(), e.end(), 1.0) != e.end())
    rec.row("fraction_0_1", p, hist.fraction_between(0.0, 1.0), -std::expm1(-1.0), Check::abs_tol, 0.05);
  const auto mv = mv_moment(c.mv_q, c.h, 2);
  const std::string mp = "q=" + std::to_string(c.mv_q) + " h=" + std::to_string(c.h) + " k=2";
  if (mv.has_oracle)
    rec.row("mv_moment", mp, mv.direct, mv.oracle, Check::rel_tol, 1e-9);
  else
    rec.row("mv_moment", mp, mv.direct, 0.0, Check::info);
}

}  // namespace

RunResult execute(const RunConfig& config) {
  RunResult result;
  result.config = config;
  Recorder rec(config, result);
  const auto& s = config.subcommand;
  if (s == "gaps") run_gaps(config, rec);
  else if (s == "poisson") run_poisson(config, rec);
  else if (s == "singular") run_singular(config, rec);
  else if (s == "gallagher") run_gallagher(config, rec);
  else if (s == "tuples") run_tuples(config, rec);
  else if (s == "variance") run_variance(config, rec);
  else if (s == "moments") run_moments(config, rec);
  else if (s == "zeros") run_zeros(config, rec);
  else if (s == "maier") run_maier(config, rec);
  else if (s == "uncertainty") run_uncertainty(config, rec);
  else if (s == "residues") run_residues(config, rec);
  else throw precondition_error("unknown subcommand '" + s + "'");
  return result;
}

}  // namespace primelab::cli
