#include <cmath>
#include <deque>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "primelab/cli.hpp"
#include "primelab/error.hpp"
#include "primelab/parallel.hpp"

namespace pc = primelab::cli;

namespace {

// Integer options go through a double so that 1e8 and 10000000 both parse.
struct IntArg {
  std::string name;
  std::uint64_t* target;
  double value;
  double initial;
};

void add_int(CLI::App* app, std::deque<IntArg>& ints, const std::string& name, std::uint64_t& target,
             const std::string& help) {
  ints.push_back({name, &target, static_cast<double>(target), static_cast<double>(target)});
  app->add_option(name, ints.back().value, help)->capture_default_str();
}

std::uint64_t to_integer(const std::string& name, double v) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19)
    throw primelab::precondition_error("option " + name + " must be a non-negative integer, got " + std::to_string(v));
  return static_cast<std::uint64_t>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"primelab: numerical experiments on prime distribution"};
  app.require_subcommand(1);
  pc::RunConfig c;
  std::string format = "csv";
  std::vector<std::string> tol_overrides;
  bool no_timestamp = false;

  std::uint64_t k = c.k, r = c.r, seeds = c.seeds, points = c.points, threads = c.threads;
  std::deque<IntArg> ints;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("-o,--output", c.output_path, "output file, '-' for stdout")->capture_default_str();
    sub->add_option("--plot", c.plot_prefix, "write curve CSVs to <prefix>_<name>.csv");
    sub->add_option("--tol", tol_overrides, "tolerance override id=value");
    sub->add_flag("--no-timestamp", no_timestamp, "omit the timestamp line");
    sub->add_option("--threads", threads, "worker threads (0 = PRIMELAB_THREADS or 1)")->capture_default_str();
  };

  const std::map<std::string, std::string> descriptions = {
      {"gaps", "normalized prime gaps against the exponential law"},
      {"poisson", "prime counts in short windows against Poisson(lambda)"},
      {"singular", "truncated singular series with tail bound"},
      {"gallagher", "average of the singular series over k-subsets of [1, h]"},
      {"tuples", "prime tuple counts against the Hardy-Littlewood prediction"},
      {"variance", "variance of psi over windows of length h"},
      {"moments", "higher moments of psi over windows, optional identity check"},
      {"zeros", "explicit formula, N(T) and related checks from a zero table"},
      {"maier", "E(u) sign changes, zeta_P identity and the Maier matrix"},
      {"uncertainty", "sequence distribution in progressions and multiples"},
      {"residues", "gaps between reduced residues and their moments"},
  };
  for (const auto& name : pc::subcommands()) {
    auto* sub = app.add_subcommand(name, descriptions.at(name));
    // Single-letter long options (--h, --N) collide with -h.
    sub->set_help_flag("--help", "print help for this subcommand");
    common(sub);
    if (name == "gaps" || name == "poisson" || name == "variance" || name == "moments") add_int(sub, ints, "--N", c.N, "upper limit");
    if (name == "tuples" || name == "maier" || name == "uncertainty") add_int(sub, ints, "--x", c.x, "upper limit");
    if (name == "gallagher" || name == "variance" || name == "moments" || name == "residues")
      add_int(sub, ints, "--h", c.h, "window or interval length");
    if (name == "singular" || name == "gallagher" || name == "tuples") add_int(sub, ints, "--cutoff", c.cutoff, "prime cutoff");
    if (name == "residues") {
      add_int(sub, ints, "--q", c.q, "modulus for reduced residues");
      add_int(sub, ints, "--mv-q", c.mv_q, "modulus for the moment check");
    }
    if (name == "uncertainty") {
      add_int(sub, ints, "--d", c.d, "divisor for the multiples report");
      add_int(sub, ints, "--modulus", c.modulus, "progression modulus");
      add_int(sub, ints, "--residue", c.residue, "progression residue");
      sub->add_option("--sequence", c.sequence, "ones, primes, two_squares")->capture_default_str();
    }
    if (name == "maier" || name == "zeros") add_int(sub, ints, "--seed", c.seed, "RNG seed");
    if (name == "zeros") add_int(sub, ints, "--samples", c.samples, "bias-model samples");
    if (name == "gaps" || name == "residues") sub->add_option("--bins", c.bins, "lo:hi:width")->capture_default_str();
    if (name == "gaps") sub->add_option("--normalization", c.normalization, "log_p or log_index")->capture_default_str();
    if (name == "poisson") {
      sub->add_option("--lambda", c.lambda, "mean window count")->capture_default_str();
      sub->add_option("--window-rule", c.window_rule, "lambda_log_N or lambda_log_n")->capture_default_str();
      sub->add_option("--kmax", k, "largest k reported")->capture_default_str();
    }
    if (name == "gallagher") sub->add_option("--k", k, "tuple size")->capture_default_str();
    if (name == "singular" || name == "tuples") sub->add_option("--tuple", c.tuple, "comma-separated offsets")->capture_default_str();
    if (name == "moments") {
      sub->add_option("--r", r, "largest moment")->capture_default_str();
      sub->add_flag("--identity", c.identity, "check the combinatorial decomposition");
    }
    if (name == "zeros") {
      sub->add_option("--zeros", c.zeros_path, "zero ordinate file")->required();
      sub->add_option("--T", c.T, "height for N(T)")->capture_default_str();
      sub->add_option("--points", points, "explicit-formula sample points")->capture_default_str();
    }
    if (name == "maier") {
      sub->add_option("--y", c.y, "prime bound for the modulus")->capture_default_str();
      sub->add_option("--seeds", seeds, "number of seeds")->capture_default_str();
      sub->add_option("--u-lo", c.u_lo)->capture_default_str();
      sub->add_option("--u-hi", c.u_hi)->capture_default_str();
      sub->add_option("--u-step", c.u_step)->capture_default_str();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    c.subcommand = app.get_subcommands().front()->get_name();
    for (const auto& arg : ints)
      if (arg.value != arg.initial) *arg.target = to_integer(arg.name, arg.value);
    c.k = static_cast<unsigned>(k);
    c.r = static_cast<unsigned>(r);
    c.seeds = static_cast<unsigned>(seeds);
    c.points = static_cast<unsigned>(points);
    c.threads = static_cast<unsigned>(threads ? threads : primelab::default_threads());
    c.format = format == "json" ? pc::OutputFormat::json : pc::OutputFormat::csv;
    c.timestamp = !no_timestamp;
    for (const auto& t : tol_overrides) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) throw primelab::precondition_error("--tol expects id=value, got '" + t + "'");
      c.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    }

    const auto result = pc::execute(c);
    if (c.output_path == "-") {
      pc::write_result(result, std::cout);
    } else {
      std::ofstream out(c.output_path);
      if (!out) throw std::runtime_error("cannot open " + c.output_path);
      pc::write_result(result, out);
    }
    if (!c.plot_prefix.empty()) {
      for (const auto& curve : result.curves) {
        std::ofstream out(c.plot_prefix + "_" + curve.name + ".csv");
        if (!out) throw std::runtime_error("cannot write curve " + curve.name);
        pc::write_curve_csv(curve, out);
      }
    }
    return result.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "primelab: " << e.what() << '\n';
    return 2;
  }
}
