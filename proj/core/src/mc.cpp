#include "cslab/mc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cslab/errors.hpp"
#include "cslab/parallel.hpp"

namespace cslab {

double alexander_envelope(std::size_t n, double c) {
  if (n <= 1) return 0.0;
  const double x = static_cast<double>(n);
  return c * std::sqrt(std::log(x) / x);
}

std::vector<std::size_t> gamma_samples(std::size_t n, std::size_t trials, std::uint64_t master_seed,
                                       LcsEngine engine, unsigned threads) {
  if (n == 0) throw InputError("gamma estimate needs n >= 1");
  if (trials == 0) throw InputError("gamma estimate needs trials >= 1");
  std::vector<std::size_t> out(trials, 0);
  parallel_for(trials, threads, [&](std::size_t i) {
    SplitMix64 gen(Seed{master_seed, i});
    const BinaryString a = random_string(n, gen);
    const BinaryString b = random_string(n, gen);
    out[i] = lcs(a, b, engine).length;
  });
  return out;
}

GammaEstimate estimate_gamma(std::size_t n, std::size_t trials, std::uint64_t master_seed,
                             LcsEngine engine, unsigned threads, double c) {
  const std::vector<std::size_t> lengths = gamma_samples(n, trials, master_seed, engine, threads);
  const double scale = static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t l : lengths) sum += static_cast<double>(l) / scale;
  const double t = static_cast<double>(trials);
  const double mean = sum / t;
  double ss = 0.0;
  for (std::size_t l : lengths) {
    const double d = static_cast<double>(l) / scale - mean;
    ss += d * d;
  }
  GammaEstimate g;
  g.n = n;
  g.trials = trials;
  g.mean = mean;
  g.stderr_ = trials > 1 ? std::sqrt(ss / (t - 1.0) / t) : 0.0;
  g.alexander_gap = alexander_envelope(n, c);
  g.engine = engine;
  return g;
}

namespace {

BinaryString from_index(std::uint64_t v, std::size_t n) {
  BinaryString s;
  for (std::size_t i = 0; i < n; ++i) s.push_back((v >> i) & 1U);
  return s;
}

}  // namespace

ExactMean exact_small_n(std::size_t n) {
  if (n == 0) throw InputError("exact mean needs n >= 1");
  if (n > kExactMaxN) {
    throw SizeGuardError("exact enumeration limited to n <= " + std::to_string(kExactMaxN));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<BinaryString> all;
  all.reserve(count);
  for (std::uint64_t v = 0; v < count; ++v) all.push_back(from_index(v, n));

  // complementing both strings preserves the LCS, so fix a's lowest bit at 0
  std::uint64_t half_total = 0;
  for (std::uint64_t va = 0; va < count; va += 2) {
    for (std::uint64_t vb = 0; vb < count; ++vb) half_total += lcs_dp(all[va], all[vb]).length;
  }
  ExactMean e;
  e.n = n;
  e.total = 2 * half_total;
  e.pairs = count * count;
  e.mean = static_cast<double>(e.total) / (static_cast<double>(e.pairs) * static_cast<double>(n));
  return e;
}

ConvergenceTable convergence_table(std::span<const std::size_t> n_list, std::size_t trials,
                                   std::uint64_t seed, double c, LcsEngine engine, unsigned threads) {
  ConvergenceTable table;
  table.c = c;
  for (std::size_t n : n_list) {
    ConvergenceRow row;
    row.estimate = estimate_gamma(n, trials, seed, engine, threads, c);
    row.upper = row.estimate.mean + row.estimate.alexander_gap;
    table.rows.push_back(row);
  }
  std::vector<ConvergenceRow> sorted = table.rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const ConvergenceRow& x, const ConvergenceRow& y) { return x.estimate.n < y.estimate.n; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const GammaEstimate& lo = sorted[i - 1].estimate;
    const GammaEstimate& hi = sorted[i].estimate;
    const double tol = 2.0 * std::hypot(lo.stderr_, hi.stderr_);
    if (hi.mean + tol < lo.mean) table.monotone_within_2se = false;
  }
  if (!sorted.empty()) {
    const ConvergenceRow& last = sorted.back();
    table.largest_brackets_reference =
        last.estimate.mean <= table.reference && table.reference <= last.upper;
  }
  return table;
}

void write_gamma_csv(std::ostream& out, std::span<const GammaEstimate> rows) {
  const auto old_precision = out.precision(17);
  out << "n,trials,mean,stderr,alexander_gap\n";
  for (const GammaEstimate& g : rows) {
    out << g.n << ',' << g.trials << ',' << g.mean << ',' << g.stderr_ << ',' << g.alexander_gap << '\n';
  }
  out.precision(old_precision);
}

}  // namespace cslab
