#include "cslab/network.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/distributions/chi_squared.hpp>

#include "cslab/errors.hpp"
#include "cslab/lcs.hpp"

namespace cslab {

namespace {

constexpr std::size_t kTopBit = kWordBits - 1;

std::ptrdiff_t floor_div(std::ptrdiff_t x, std::ptrdiff_t y) {
  std::ptrdiff_t q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

}  // namespace

TranspositionNetwork::TranspositionNetwork(const BinaryString& a, const BinaryString& b,
                                           SiteSequence state)
    : rows_(a.size()), cols_(b.size()), state_(std::move(state)) {
  if (rows_ > 0) {
    const std::size_t span = 2 * rows_ - 1;
    const std::size_t top = span - 1;  // T = 2m - 2
    rev_a_ = PackedBits(span);
    rev_a_valid_ = PackedBits(span);
    for (std::size_t i = 0; i < rows_; ++i) {
      rev_a_.set(top - 2 * i, a[i] != 0);
      rev_a_valid_.set(top - 2 * i, true);
    }
  }
  if (cols_ > 0) {
    const std::size_t span = 2 * cols_ - 1;
    spread_b_ = PackedBits(span);
    spread_b_valid_ = PackedBits(span);
    for (std::size_t j = 0; j < cols_; ++j) {
      spread_b_.set(2 * j, b[j] != 0);
      spread_b_valid_.set(2 * j, true);
    }
  }
}

std::size_t TranspositionNetwork::advance() {
  const auto d = static_cast<std::int64_t>(state_.halfstep());
  state_.set_halfstep(state_.halfstep() + 1);
  if (rows_ == 0 || cols_ == 0) return 0;

  const auto m = static_cast<std::int64_t>(rows_);
  const auto n = static_cast<std::int64_t>(cols_);
  // right wires of the cells on anti-diagonal d
  const std::int64_t w_lo = std::max(-d, d - 2 * (m - 1));
  const std::int64_t w_hi = std::min(d, 2 * (n - 1) - d);
  if (w_lo > w_hi) return 0;

  const std::int64_t lo = state_.origin_index();
  if (w_lo - 1 < lo || w_hi >= state_.end_index()) {
    throw InputError("site window [" + std::to_string(lo) + ", " +
                     std::to_string(state_.end_index()) + ") does not cover anti-diagonal " +
                     std::to_string(d));
  }

  const auto bits = static_cast<std::ptrdiff_t>(kWordBits);
  const std::ptrdiff_t p_first = w_lo - 1 - lo;
  const std::ptrdiff_t p_last = w_hi - lo;
  const std::ptrdiff_t k_first = floor_div(p_first, bits);
  const std::ptrdiff_t k_last = floor_div(p_last, bits);

  const std::ptrdiff_t a_off = (2 * m - 2) - d + lo;
  const std::ptrdiff_t b_off = d + lo;

  auto words = state_.bits().words();
  swaps_.assign(static_cast<std::size_t>(k_last - k_first + 1), 0);

  std::size_t exchanged = 0;
  for (std::ptrdiff_t k = k_first; k <= k_last; ++k) {
    const std::ptrdiff_t base = k * bits;
    const Word mismatch = (rev_a_.extract(a_off + base) ^ spread_b_.extract(b_off + base)) &
                          rev_a_valid_.extract(a_off + base) &
                          spread_b_valid_.extract(b_off + base);
    const Word here = words[static_cast<std::size_t>(k)];
    const Word below = k > 0 ? words[static_cast<std::size_t>(k - 1)] : Word{0};
    const Word left = (here << 1) | (below >> kTopBit);
    const Word swap = mismatch & left & ~here;
    swaps_[static_cast<std::size_t>(k - k_first)] = swap;
    exchanged += static_cast<std::size_t>(std::popcount(swap));
  }
  for (std::ptrdiff_t k = k_first; k <= k_last; ++k) {
    const Word swap = swaps_[static_cast<std::size_t>(k - k_first)];
    if (swap == 0) continue;
    words[static_cast<std::size_t>(k)] ^= swap ^ (swap >> 1);
    if (k > 0) words[static_cast<std::size_t>(k - 1)] ^= swap << kTopBit;
  }
  return exchanged;
}

namespace {

TranspositionNetwork step_ic_network(const BinaryString& a, const BinaryString& b,
                                     std::size_t n) {
  const auto half = static_cast<std::int64_t>(2 * n);
  return TranspositionNetwork(a, b, SiteSequence::step_initial_condition(-half, half));
}

void require_length(const BinaryString& a, const BinaryString& b, std::size_t n) {
  if (a.size() < n || b.size() < n) {
    throw InputError("strings of length " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()) + " are too short for " + std::to_string(n) +
                     " time steps");
  }
}

}  // namespace

SiteSequence evolve_step_ic(const BinaryString& a, const BinaryString& b, std::size_t n) {
  require_length(a, b, n);
  TranspositionNetwork net = step_ic_network(a, b, n);
  for (std::size_t h = 0; h < 2 * n; ++h) net.advance();
  return std::move(net).release();
}

std::vector<std::string> evolve_trace(const BinaryString& a, const BinaryString& b,
                                      std::size_t n) {
  require_length(a, b, n);
  TranspositionNetwork net = step_ic_network(a, b, n);
  std::vector<std::string> lines;
  lines.reserve(2 * n + 1);
  lines.push_back(net.state().to_trace());
  for (std::size_t h = 0; h < 2 * n; ++h) {
    net.advance();
    lines.push_back(net.state().to_trace());
  }
  return lines;
}

CrossingReport crossing_report(const BinaryString& a, const BinaryString& b, std::size_t n,
                               std::size_t k) {
  if (k > 2 * n) {
    throw InputError("k = " + std::to_string(k) + " outside [0, 2n] for n = " + std::to_string(n));
  }
  if (a.size() < k || b.size() < 2 * n - k) {
    throw InputError("strings too short for prefixes (" + std::to_string(k) + ", " +
                     std::to_string(2 * n - k) + ")");
  }
  TranspositionNetwork net = step_ic_network(a, b, n);
  for (std::size_t h = 0; h < 2 * n; ++h) net.advance();

  CrossingReport report;
  report.n = n;
  report.k = k;
  report.l = lcs_bitparallel(a.prefix(k), b.prefix(2 * n - k)).length;
  report.particles_at_or_above = net.state().particles_at_or_above(
      static_cast<std::int64_t>(2 * n) - static_cast<std::int64_t>(2 * k));
  return report;
}

std::size_t bottom_output_particles(const BinaryString& a, const BinaryString& b) {
  if (a.empty() || b.empty()) return 0;
  const auto m = static_cast<std::int64_t>(a.size());
  const auto n = static_cast<std::int64_t>(b.size());
  TranspositionNetwork net(a, b, SiteSequence::step_initial_condition(-m, n));
  for (std::int64_t h = 0; h < m + n - 1; ++h) net.advance();
  // bottom edge of column j carries wire j - m
  const SiteSequence& s = net.state();
  return s.particles_at_or_above(-m) - s.particles_at_or_above(n - m);
}

SiteSequence dualize(const SiteSequence& s) {
  SiteSequence out(-s.end_index(), s.size(), s.halfstep());
  for (std::int64_t w = s.origin_index(); w < s.end_index(); ++w) out.set(-1 - w, !s.particle(w));
  return out;
}

IndependenceReport independence_test(std::size_t trials, std::size_t n, std::uint64_t seed) {
  if (n < 3) throw InputError("independence test needs strings of length >= 3");
  if (trials < kIndependenceMinTrials) {
    throw InputError("independence test needs at least " + std::to_string(kIndependenceMinTrials) + " trials");
  }

  using Cell = std::pair<std::size_t, std::size_t>;
  IndependenceReport report;
  report.trials = trials;
  report.n = n;
  const std::array<std::pair<const char*, std::array<Cell, 3>>, 5> layouts{{
      {"row sharing a_0", {{{0, 0}, {0, 1}, {0, 2}}}},
      {"column sharing b_1", {{{0, 1}, {1, 1}, {2, 1}}}},
      {"corner above-left", {{{0, 0}, {0, 1}, {1, 0}}}},
      {"corner below-right", {{{0, 1}, {1, 0}, {1, 1}}}},
      {"main diagonal", {{{0, 0}, {1, 1}, {2, 2}}}},
  }};
  for (const auto& [label, cells] : layouts) {
    TripleStat t;
    t.label = label;
    t.cells = cells;
    report.triples.push_back(t);
  }

  std::size_t determined = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    SplitMix64 gen(Seed{seed, trial});
    const BinaryString a = random_string(n, gen);
    const BinaryString b = random_string(n, gen);
    auto type = [&](Cell c) {
      return static_cast<unsigned>(cell_type(a[c.first], b[c.second]));
    };

    for (TripleStat& t : report.triples) {
      const unsigned idx = type(t.cells[0]) | (type(t.cells[1]) << 1) | (type(t.cells[2]) << 2);
      ++t.counts[idx];
    }

    const unsigned t00 = type({0, 0}), t01 = type({0, 1}), t10 = type({1, 0}), t11 = type({1, 1});
    ++report.quad.counts[t00 | (t01 << 1) | (t10 << 2) | (t11 << 3)];
    if (t11 == (t00 ^ t01 ^ t10)) ++determined;

    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = 0; j + 1 < n; ++j) {
        const unsigned sum = type({i, j}) + type({i, j + 1}) + type({i + 1, j}) +
                             type({i + 1, j + 1});
        ++report.blocks_checked;
        if (sum % 2 != 0) ++report.parity_violations;
      }
    }
  }

  const double total = static_cast<double>(trials);
  for (TripleStat& t : report.triples) {
    const double expected = total / 8.0;
    for (std::size_t c : t.counts) {
      const double diff = static_cast<double>(c) - expected;
      t.chi2 += diff * diff / expected;
    }
    boost::math::chi_squared_distribution<double> dist(t.dof);
    t.p_value = boost::math::cdf(boost::math::complement(dist, t.chi2));
  }
  {
    const double expected = total / 16.0;
    for (std::size_t c : report.quad.counts) {
      const double diff = static_cast<double>(c) - expected;
      report.quad.chi2 += diff * diff / expected;
    }
    boost::math::chi_squared_distribution<double> dist(report.quad.dof);
    report.quad.p_value = boost::math::cdf(boost::math::complement(dist, report.quad.chi2));
    report.quad.determined_fraction = static_cast<double>(determined) / total;
  }
  return report;
}

}  // namespace cslab
