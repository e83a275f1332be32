// Writes the first N zeta zero ordinates in the zeros-file format.
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "primelab/zero_table.hpp"
#include "primelab/zeta.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Compute zeta zero ordinates by Gram blocks and write them one per line"};
  std::size_t count = 100'000;
  std::string out;
  app.add_option("--count", count, "number of zeros")->check(CLI::Range(std::size_t{1}, std::size_t{2'000'000}));
  app.add_option("-o,--output", out, "output path")->required();
  CLI11_PARSE(app, argc, argv);
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const auto zeros = primelab::compute_zeros(count);
    primelab::write_zeros(out, zeros, "first " + std::to_string(count) + " zeta zero ordinates (Gram blocks, Rosser rule)");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "zerogen: wrote %zu zeros to %s in %.1f s\n", zeros.size(), out.c_str(), secs);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "zerogen: %s\n", e.what());
    return 1;
  }
  return 0;
}
