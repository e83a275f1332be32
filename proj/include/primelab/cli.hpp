#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace primelab::cli {

enum class OutputFormat { csv, json };

// Resolved parameters of one run. Every field is echoed in the output, so
// a result file is enough to repeat the run.
struct RunConfig {
  std::string subcommand;
  std::uint64_t N = 10'000'000;
  std::uint64_t x = 10'000'000;
  std::uint64_t h = 1000;
  double lambda = 1.0;
  unsigned k = 2;
  unsigned r = 4;
  std::uint64_t q = 9'699'690;
  double y = 1000.0;
  double u_lo = 1.0, u_hi = 6.0, u_step = 0.05;
  std::uint64_t seed = 1;
  unsigned seeds = 5;
  std::uint64_t cutoff = 1'000'000;
  std::string tuple = "0,2";
  std::string bins = "0:5:0.25";
  std::string normalization = "log_p";
  std::string window_rule = "lambda_log_N";
  std::string sequence = "primes";
  std::uint64_t d = 9, modulus = 4, residue = 1;
  std::uint64_t mv_q = 210;
  double T = 100.0;
  unsigned points = 32;
  std::uint64_t samples = 2000;
  bool identity = false;
  std::string zeros_path;
  OutputFormat format = OutputFormat::csv;
  std::string output_path = "-";
  std::string plot_prefix;
  bool timestamp = true;
  unsigned threads = 0;
  std::map<std::string, double> tolerances;  // overrides keyed by experiment id
};

std::vector<std::string> subcommands();

enum class Check { info, abs_tol, rel_tol, upper, equal };
std::string to_string(Check c);

struct ResultRow {
  std::string experiment;
  std::string parameters;
  double observed = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;  // observed / predicted, NaN when predicted == 0
  double tolerance = 0.0;
  Check check = Check::info;
  bool pass = true;
};

// Data-only curve for plotting: named columns, one vector per row.
struct Curve {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct RunResult {
  RunConfig config;
  std::vector<ResultRow> rows;
  std::vector<Curve> curves;
  bool pass() const;
};

// Runs one experiment. Module errors propagate as exceptions.
RunResult execute(const RunConfig& config);

std::string config_json(const RunConfig& config);
// CSV: optional '# timestamp' line, '# config' line, header row, rows,
// '# verdict' line. JSON: {"timestamp"?, "config", "results", "verdict"}.
void write_result(const RunResult& result, std::ostream& out);
void write_curve_csv(const Curve& curve, std::ostream& out);

}  // namespace primelab::cli
