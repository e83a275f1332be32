#include "primelab/zero_table.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "primelab/arithmetic.hpp"
#include "primelab/error.hpp"
#include "primelab/numeric.hpp"
#include "primelab/parallel.hpp"
#include "primelab/random.hpp"
#include "primelab/summatory.hpp"

namespace primelab {

using std::numbers::pi;

ZeroTable::ZeroTable(std::vector<double> ordinates) : gammas_(std::move(ordinates)) {
  for (std::size_t i = 0; i < gammas_.size(); ++i) {
    if (!(gammas_[i] > 0.0) || !std::isfinite(gammas_[i]))
      throw precondition_error("ZeroTable: ordinates must be finite and positive");
    if (i > 0 && !(gammas_[i] > gammas_[i - 1])) throw precondition_error("ZeroTable: ordinates must be strictly ascending");
  }
}

std::size_t ZeroTable::count_up_to(double T) const {
  return static_cast<std::size_t>(std::upper_bound(gammas_.begin(), gammas_.end(), T) - gammas_.begin());
}

ZeroTable ZeroTable::truncated(std::size_t n) const {
  ZeroTable t;
  t.gammas_.assign(gammas_.begin(), gammas_.begin() + static_cast<std::ptrdiff_t>(std::min(n, gammas_.size())));
  return t;
}

ZeroTable parse_zeros(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const char* first = line.data() + b;
    const char* last = line.data() + e + 1;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw parse_error(line_no, "malformed ordinate '" + std::string(first, last) + "'");
    if (!(v > 0.0) || !std::isfinite(v)) throw parse_error(line_no, "ordinate must be positive");
    if (!out.empty() && !(v > out.back())) throw parse_error(line_no, "ordinates must be strictly ascending");
    out.push_back(v);
  }
  if (out.empty()) throw parse_error(line_no, "no ordinates in zeros file");
  return ZeroTable(std::move(out));
}

ZeroTable load_zeros(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open zeros file '" + path + "'");
  return parse_zeros(in);
}

void write_zeros(const std::string& path, const std::vector<double>& ordinates, const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write zeros file '" + path + "'");
  if (!comment.empty()) out << "# " << comment << '\n';
  char buf[64];
  for (const double g : ordinates) {
    std::snprintf(buf, sizeof buf, "%.15g\n", g);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

double zero_count_estimate(double T) {
  if (!(T > 0.0)) return 0.0;
  const double a = T / (2.0 * pi);
  return a * std::log(a / std::numbers::e) + 0.875;
}

namespace {

void require_within(const ZeroTable& table, double T, const char* who) {
  if (T > table.t_max()) {
    std::ostringstream msg;
    msg << who << ": T = " << T << " exceeds the table (t_max = " << table.t_max() << ")";
    throw precondition_error(msg.str());
  }
}

}  // namespace

ZeroCountCheck n_of_t_check(const ZeroTable& table, double T) {
  require_within(table, T, "n_of_t_check");
  ZeroCountCheck c;
  c.T = T;
  c.observed = table.count_up_to(T);
  c.predicted = zero_count_estimate(T);
  c.leading = T > 1.0 ? T / (2.0 * pi) * std::log(T) : 0.0;
  c.relative_gap = relative_difference(static_cast<double>(c.observed), c.predicted);
  return c;
}

double psi_explicit(double x, double T, const ZeroTable& table, const ExplicitFormulaOptions& options) {
  if (!(x >= 2.0)) throw precondition_error("psi_explicit: requires x >= 2");
  if (!(T >= 0.0)) throw precondition_error("psi_explicit: requires T >= 0");
  require_within(table, T, "psi_explicit");
  const double lx = std::log(x);
  const double start = (1.0 - options.taper_fraction) * T;
  const double sigma = options.taper_fraction * T / 3.0;
  CompensatedSum s;
  for (const double g : table.ordinates()) {
    if (g > T) break;
    double w = 1.0;
    if (options.taper && g > start && sigma > 0.0) {
      const double d = (g - start) / sigma;
      w = std::exp(-0.5 * d * d);
    }
    s += w * (0.5 * std::cos(g * lx) + g * std::sin(g * lx)) / (0.25 + g * g);
  }
  return x - 2.0 * std::sqrt(x) * s.value();
}

complex explicit_zero_sum_unpaired(double x, double T, const ZeroTable& table) {
  require_within(table, T, "explicit_zero_sum_unpaired");
  const double lx = std::log(x);
  CompensatedComplexSum s;
  for (const double g : table.ordinates()) {
    if (g > T) break;
    for (const double sg : {g, -g}) {
      const complex rho(0.5, sg);
      s += std::exp(rho * lx) / rho;
    }
  }
  return s.value();
}

ZeroPairVariance window_variance_zeros(double X, double h, const ZeroTable& table) {
  if (!(X > 0.0) || !(h > 0.0) || h > X) throw precondition_error("window_variance_zeros: requires 0 < h <= X");
  const double T = X / h;
  require_within(table, T, "window_variance_zeros");
  ZeroPairVariance out;
  out.X = X;
  out.h = h;
  out.zeros = table.count_up_to(T);
  if (out.zeros > 30'000) throw capacity_error("window_variance_zeros: more than 3e4 zeros for the quadratic sum");
  out.bound = h * std::pow(1.0 + std::log(T), 2);
  std::vector<double> g;
  for (std::size_t i = 0; i < out.zeros; ++i) {
    g.push_back(table.ordinates()[i]);
    g.push_back(-table.ordinates()[i]);
  }
  const double lX = std::log(X), l2 = std::log(2.0);
  std::vector<complex> eX(g.size()), e2(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    eX[i] = std::polar(1.0, g[i] * lX);
    e2[i] = std::polar(1.0, g[i] * l2);
  }
  const auto rows = ordered_map(g.size(), 0, [&](std::size_t a) {
    CompensatedSum row;
    for (std::size_t b = 0; b < g.size(); ++b) {
      const double d = g[a] - g[b];
      const complex term = eX[a] * std::conj(eX[b]) * (2.0 * e2[a] * std::conj(e2[b]) - 1.0) / complex(1.0, d);
      row += term.real();
    }
    return row.value();
  });
  CompensatedSum total;
  for (const double r : rows) total += r;
  out.value = h * h / X * total.value();
  out.ratio = out.value / out.bound;
  return out;
}

double window_variance_sampled(std::uint64_t X, std::uint64_t h, std::size_t samples, std::uint64_t seed) {
  if (X < 2 || h < 1 || samples < 1) throw precondition_error("window_variance_sampled: requires X >= 2, h >= 1, samples >= 1");
  PhiloxStream rng(seed);
  CompensatedSum s;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::uint64_t x = X + rng.below(X + 1);
    const auto lam = von_mangoldt_range(x + 1, x + h + 1);
    CompensatedSum w;
    for (const double v : lam) w += v;
    const double d = w.value() - static_cast<double>(h);
    s += d * d;
  }
  return s.value() / static_cast<double>(samples);
}

CosineMoment cosine_sum_moment(double X, double T, unsigned k, const ZeroTable& table, double exponent) {
  if (k < 1 || k > 6) throw precondition_error("cosine_sum_moment: requires 1 <= k <= 6");
  if (!(exponent > 1.0)) throw precondition_error("cosine_sum_moment: exponent must exceed 1");
  if (!(T >= 0.0)) throw precondition_error("cosine_sum_moment: requires T >= 0");
  require_within(table, T, "cosine_sum_moment");
  if (T > 1.0 && X < std::pow(T, exponent)) {
    std::ostringstream msg;
    msg << "cosine_sum_moment: X = " << X << " is below T^" << exponent << " = " << std::pow(T, exponent)
        << "; the zero sum only behaves like independent terms for X >= T^{1+eps}";
    throw precondition_error(msg.str());
  }
  CosineMoment out;
  out.k = k;
  out.X = X;
  out.T = T;
  out.zeros = table.count_up_to(T);
  const std::vector<double> g(table.ordinates().begin(), table.ordinates().begin() + static_cast<std::ptrdiff_t>(out.zeros));
  const double half_n = k / 2.0, nd = static_cast<double>(out.zeros);
  double dfact = 1.0;
  for (unsigned j = k - 1; j > 1; j -= 2) dfact *= j;
  out.predicted = (k % 2 == 0) ? dfact * X * std::pow(2.0 * nd, half_n) : 0.0;
  if (out.zeros > 0) {
    // x = e^u; panels no wider than half a period of the top frequency k T.
    const double a = std::log(X), b = std::log(2.0 * X);
    const double top = k * std::max(T, g.back());
    const auto panels = static_cast<std::size_t>(std::ceil((b - a) * top / pi)) + 1;
    const double w = (b - a) / static_cast<double>(panels);
    const auto f = [&](double u) {
      double s = 0.0;
      for (const double gm : g) s += 2.0 * std::cos(gm * u);
      return std::exp(u) * std::pow(s, static_cast<int>(k));
    };
    const auto parts = ordered_map(panels, 0, [&](std::size_t i) {
      const double lo = a + w * static_cast<double>(i);
      return boost::math::quadrature::gauss<double, 20>::integrate(f, lo, lo + w);
    });
    CompensatedSum s;
    for (const double p : parts) s += p;
    out.empirical = s.value();
  }
  out.ratio = out.predicted != 0.0 ? out.empirical / out.predicted : NAN;
  out.normalized = out.zeros > 0 ? out.empirical / (X * std::pow(nd, half_n)) : 0.0;
  return out;
}

BiasModelSummary chebyshev_model_sim(const ZeroTable& table, std::size_t samples, std::uint64_t seed, bool keep_values,
                                     unsigned threads) {
  if (table.empty()) throw precondition_error("chebyshev_model_sim: zero table is empty");
  if (samples < 1000) throw precondition_error("chebyshev_model_sim: requires samples >= 1000");
  const auto& g = table.ordinates();
  std::vector<double> cre(g.size()), cim(g.size());
  CompensatedSum pv;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double d = 0.25 + g[j] * g[j];
    cre[j] = 0.5 / d;  // Re(e^{i t} / (1/2 + i g)) = (cos t / 2 + g sin t) / (1/4 + g^2)
    cim[j] = g[j] / d;
    pv += 1.0 / d;
  }
  const Philox gen(seed);
  const auto values = ordered_map(samples, threads, [&](std::size_t s) {
    CompensatedSum v;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double t = 2.0 * pi * gen.uniform(j, s);
      v += cre[j] * std::cos(t) + cim[j] * std::sin(t);
    }
    return v.value();
  });
  BiasModelSummary out;
  out.samples = samples;
  out.zeros = g.size();
  out.seed = seed;
  out.predicted_variance = 0.5 * pv.value();
  CompensatedSum m1;
  for (const double v : values) m1 += v;
  out.mean = m1.value() / static_cast<double>(samples);
  CompensatedSum m2, m3;
  for (const double v : values) {
    const double d = v - out.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  out.variance = m2.value() / static_cast<double>(samples - 1);
  const double sd = std::sqrt(out.variance);
  out.skewness = sd > 0.0 ? m3.value() / static_cast<double>(samples) / (sd * sd * sd) : 0.0;
  out.mean_bound = 3.0 * sd / std::sqrt(static_cast<double>(samples));
  if (keep_values) out.values = values;
  return out;
}

BiasSample bias_sample(std::uint64_t x) {
  if (x < 2) throw precondition_error("bias_sample: requires x >= 2");
  const auto s = summatory(x);
  BiasSample b;
  b.x = x;
  b.psi_minus_theta = s.psi_x - s.theta_x;
  b.sqrt_x = std::sqrt(static_cast<double>(x));
  b.pi_x = s.pi_x;
  b.li_x = log_integral(static_cast<double>(x));
  return b;
}

}  // namespace primelab
