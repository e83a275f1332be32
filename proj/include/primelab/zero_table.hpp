#pragma once

#include <cstddef>
#include <cstdint>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace primelab {

// Positive ordinates gamma of zeros 1/2 + i gamma, strictly ascending.
class ZeroTable {
 public:
  ZeroTable() = default;
  // Validates order and positivity; throws precondition_error.
  explicit ZeroTable(std::vector<double> ordinates);

  const std::vector<double>& ordinates() const noexcept { return gammas_; }
  std::size_t count() const noexcept { return gammas_.size(); }
  bool empty() const noexcept { return gammas_.empty(); }
  double t_max() const noexcept { return gammas_.empty() ? 0.0 : gammas_.back(); }
  // #{gamma <= T}.
  std::size_t count_up_to(double T) const;
  // First n ordinates.
  ZeroTable truncated(std::size_t n) const;

 private:
  std::vector<double> gammas_;
};

// One ordinate per line, '#' comment lines and blank lines skipped.
// Throws parse_error carrying the line number on malformed, non-positive
// or non-ascending entries and on an empty table.
ZeroTable parse_zeros(std::istream& in);
ZeroTable load_zeros(const std::string& path);
void write_zeros(const std::string& path, const std::vector<double>& ordinates, const std::string& comment = {});

// (T / 2 pi) log(T / 2 pi e) + 7/8.
double zero_count_estimate(double T);

struct ZeroCountCheck {
  double T = 0.0;
  std::size_t observed = 0;
  double predicted = 0.0;  // refined form above
  double leading = 0.0;    // (T / 2 pi) log T
  double relative_gap = 0.0;
};

// Throws precondition_error for T beyond the table.
ZeroCountCheck n_of_t_check(const ZeroTable& table, double T);

struct ExplicitFormulaOptions {
  // Gaussian taper applied to ordinates in the last `taper_fraction` of
  // [0, T], with sigma = taper_fraction * T / 3.
  bool taper = true;
  double taper_fraction = 0.1;
};

// x - 2 sqrt(x) sum_{0 < gamma <= T} w(gamma) Re(x^{i gamma} / (1/2 + i gamma)).
// Requires x >= 2 and T <= t_max; T = 0 returns x.
double psi_explicit(double x, double T, const ZeroTable& table, const ExplicitFormulaOptions& options = {});

// The same truncated sum without pairing conjugates: sum over +-gamma of
// x^rho / rho. The imaginary part should vanish up to rounding.
std::complex<double> explicit_zero_sum_unpaired(double x, double T, const ZeroTable& table);

struct ZeroPairVariance {
  double X = 0.0, h = 0.0;
  std::size_t zeros = 0;  // #{0 < gamma <= X/h}
  double value = 0.0;     // (h^2/X) sum X^{i d} (2^{1+i d} - 1) / (1 + i d), d = gamma1 - gamma2
  double bound = 0.0;     // h (1 + log(X/h))^2
  double ratio = 0.0;
};

// Double sum over all zero pairs with |gamma| <= X/h. Requires X/h <= t_max;
// throws capacity_error above 3e4 zeros.
ZeroPairVariance window_variance_zeros(double X, double h, const ZeroTable& table);

// Mean of (psi(x+h) - psi(x) - h)^2 over `samples` seeded uniform integers
// x in [X, 2X], for comparison with window_variance_zeros.
double window_variance_sampled(std::uint64_t X, std::uint64_t h, std::size_t samples, std::uint64_t seed);

struct CosineMoment {
  unsigned k = 0;
  double X = 0.0, T = 0.0;
  std::size_t zeros = 0;
  double empirical = 0.0;   // int_X^{2X} (sum_{gamma <= T} 2 cos(gamma log x))^k dx
  double predicted = 0.0;   // (k-1)!! X (2 N(T))^{k/2} for even k, 0 for odd k
  double ratio = 0.0;       // empirical / predicted (even k)
  double normalized = 0.0;  // empirical / (X N(T)^{k/2})
};

// Requires 1 <= k <= 6, T <= t_max and X >= T^exponent (exponent > 1);
// throws precondition_error otherwise.
CosineMoment cosine_sum_moment(double X, double T, unsigned k, const ZeroTable& table, double exponent = 1.1);

struct BiasModelSummary {
  std::size_t samples = 0, zeros = 0;
  std::uint64_t seed = 0;
  double mean = 0.0, variance = 0.0, skewness = 0.0;
  double predicted_variance = 0.0;  // (1/2) sum 1/(1/4 + gamma^2)
  double mean_bound = 0.0;          // 3 sd / sqrt(samples)
  std::vector<double> values;       // filled when requested
};

// Samples of Re sum_gamma e^{i theta_gamma} / (1/2 + i gamma) with
// independent uniform phases. Requires a nonempty table and samples >= 1000.
BiasModelSummary chebyshev_model_sim(const ZeroTable& table, std::size_t samples, std::uint64_t seed,
                                     bool keep_values = false, unsigned threads = 0);

struct BiasSample {
  std::uint64_t x = 0;
  double psi_minus_theta = 0.0;
  double sqrt_x = 0.0;
  std::uint64_t pi_x = 0;
  double li_x = 0.0;
};

BiasSample bias_sample(std::uint64_t x);

}  // namespace primelab
