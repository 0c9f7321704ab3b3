#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cslab/lcs.hpp"

namespace cslab {

struct GammaEstimate {
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean = 0.0;    // estimate of E L_n / n
  double stderr_ = 0.0;
  double alexander_gap = 0.0;  // c sqrt(log n / n)
  LcsEngine engine = LcsEngine::bitparallel;
};

/// c sqrt(log n / n); zero for n <= 1.
double alexander_envelope(std::size_t n, double c);

/// Trial i draws a then b (n bits each) from Seed{master_seed, i}.
/// Throws InputError when n or trials is zero.
GammaEstimate estimate_gamma(std::size_t n, std::size_t trials, std::uint64_t master_seed,
                             LcsEngine engine = LcsEngine::bitparallel, unsigned threads = 0,
                             double c = 1.0);

/// Per-trial LCS lengths, in trial order.
std::vector<std::size_t> gamma_samples(std::size_t n, std::size_t trials, std::uint64_t master_seed,
                                       LcsEngine engine, unsigned threads = 0);

struct ExactMean {
  std::size_t n = 0;
  std::uint64_t total = 0;  // sum of LCS over all 4^n pairs
  std::uint64_t pairs = 0;
  double mean = 0.0;  // total / (pairs n)
};

inline constexpr std::size_t kExactMaxN = 12;

/// Exhaustive E L_n / n. Throws SizeGuardError for n > kExactMaxN and
/// InputError for n = 0.
ExactMean exact_small_n(std::size_t n);

struct ConvergenceRow {
  GammaEstimate estimate;
  double upper = 0.0;  // mean + envelope
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double c = 1.0;
  double reference = 0.8122;
  bool monotone_within_2se = true;
  bool largest_brackets_reference = false;
};

ConvergenceTable convergence_table(std::span<const std::size_t> n_list, std::size_t trials,
                                   std::uint64_t seed, double c = 1.0,
                                   LcsEngine engine = LcsEngine::bitparallel, unsigned threads = 0);

/// CSV with header "n,trials,mean,stderr,alexander_gap".
void write_gamma_csv(std::ostream& out, std::span<const GammaEstimate> rows);

}  // namespace cslab
