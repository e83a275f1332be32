#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>

#include "json.hpp"
#include "primelab/cli.hpp"

namespace primelab::cli {

namespace {

using nlohmann::ordered_json;

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  j["subcommand"] = c.subcommand;
  j["N"] = c.N;
  j["x"] = c.x;
  j["h"] = c.h;
  j["lambda"] = c.lambda;
  j["k"] = c.k;
  j["r"] = c.r;
  j["q"] = c.q;
  j["y"] = c.y;
  j["u_grid"] = {c.u_lo, c.u_hi, c.u_step};
  j["seed"] = c.seed;
  j["seeds"] = c.seeds;
  j["cutoff"] = c.cutoff;
  j["tuple"] = c.tuple;
  j["bins"] = c.bins;
  j["normalization"] = c.normalization;
  j["window_rule"] = c.window_rule;
  j["sequence"] = c.sequence;
  j["d"] = c.d;
  j["modulus"] = c.modulus;
  j["residue"] = c.residue;
  j["mv_q"] = c.mv_q;
  j["T"] = c.T;
  j["points"] = c.points;
  j["samples"] = c.samples;
  j["identity"] = c.identity;
  j["zeros_path"] = c.zeros_path;
  j["format"] = c.format == OutputFormat::csv ? "csv" : "json";
  j["output"] = c.output_path;
  j["plot_prefix"] = c.plot_prefix;
  j["threads"] = c.threads;
  j["tolerances"] = c.tolerances;
  return j;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// Quotes a CSV field when it contains a delimiter or quote.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json json_number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

std::string config_json(const RunConfig& config) { return to_json(config).dump(); }

void write_result(const RunResult& result, std::ostream& out) {
  const auto& c = result.config;
  const char* verdict = result.pass() ? "pass" : "fail";
  if (c.format == OutputFormat::json) {
    ordered_json j;
    if (c.timestamp) j["timestamp"] = utc_timestamp();
    j["config"] = to_json(c);
    ordered_json rows = ordered_json::array();
    for (const auto& r : result.rows) {
      rows.push_back({{"experiment", r.experiment},
                      {"parameters", r.parameters},
                      {"observed", json_number(r.observed)},
                      {"predicted", json_number(r.predicted)},
                      {"ratio", json_number(r.ratio)},
                      {"tolerance", json_number(r.tolerance)},
                      {"check", to_string(r.check)},
                      {"verdict", r.pass ? "pass" : "fail"}});
    }
    j["results"] = rows;
    j["verdict"] = verdict;
    out << j.dump(2) << '\n';
    return;
  }
  if (c.timestamp) out << "# timestamp: " << utc_timestamp() << '\n';
  out << "# config: " << config_json(c) << '\n';
  out << "experiment,parameters,observed,predicted,ratio,tolerance,check,verdict\n";
  for (const auto& r : result.rows)
    out << field(r.experiment) << ',' << field(r.parameters) << ',' << num(r.observed) << ',' << num(r.predicted)
        << ',' << num(r.ratio) << ',' << num(r.tolerance) << ',' << to_string(r.check) << ','
        << (r.pass ? "pass" : "fail") << '\n';
  out << "# verdict: " << verdict << '\n';
}

void write_curve_csv(const Curve& curve, std::ostream& out) {
  for (std::size_t i = 0; i < curve.columns.size(); ++i) out << (i ? "," : "") << curve.columns[i];
  out << '\n';
  for (const auto& row : curve.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << num(row[i]);
    out << '\n';
  }
}

}  // namespace primelab::cli
