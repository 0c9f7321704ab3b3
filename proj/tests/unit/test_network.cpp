#include <gtest/gtest.h>

#include <fstream>
#include <string>

#include "cslab/errors.hpp"
#include "cslab/lcs.hpp"
#include "cslab/network.hpp"
#include "oracles.hpp"

using namespace cslab;

namespace {

BinaryString S(const char* s) { return BinaryString::parse(s); }

std::vector<int> values(const SiteSequence& s) {
  std::vector<int> v;
  for (std::int64_t w = s.origin_index(); w < s.end_index(); ++w) v.push_back(s.particle(w) ? 1 : 0);
  return v;
}

}  // namespace

TEST(CellType, MatchIffEqual) {
  EXPECT_EQ(cell_type(0, 0), CellType::match);
  EXPECT_EQ(cell_type(1, 1), CellType::match);
  EXPECT_EQ(cell_type(1, 0), CellType::mismatch);
  EXPECT_EQ(cell_type(0, 1), CellType::mismatch);
}

TEST(CellType, TwoByTwoParityIsEven) {
  for (unsigned v = 0; v < 16; ++v) {
    const unsigned a0 = v & 1U, a1 = (v >> 1) & 1U, b0 = (v >> 2) & 1U, b1 = (v >> 3) & 1U;
    const int sum = static_cast<int>(cell_type(a0, b0)) + static_cast<int>(cell_type(a0, b1)) +
                    static_cast<int>(cell_type(a1, b0)) + static_cast<int>(cell_type(a1, b1));
    EXPECT_EQ(sum % 2, 0);
  }
}

TEST(SiteSequence, StepInitialConditionAndCounts) {
  const SiteSequence s = SiteSequence::step_initial_condition(-3, 5);
  EXPECT_EQ(s.to_trace(), "***.....");
  EXPECT_EQ(s.particle_count(), 3U);
  EXPECT_EQ(s.hole_count(), 5U);
  EXPECT_EQ(s.particles_at_or_above(-1), 1U);
  EXPECT_EQ(s.particles_at_or_above(0), 0U);
  EXPECT_EQ(s.particles_at_or_above(-10), 3U);
  EXPECT_EQ(s.particles_at_or_above(10), 0U);
}

TEST(Network, FourByFourExample) {
  const BinaryString a = S("1000"), b = S("0100");
  EXPECT_EQ(bottom_output_particles(a, b), 3U);
  EXPECT_EQ(evolve_step_ic(a, b, 4).particles_at_or_above(0), 1U);
  const CrossingReport r = crossing_report(a, b, 4, 4);
  EXPECT_EQ(r.l, 3U);
  EXPECT_EQ(r.particles_at_or_above, 1U);
  EXPECT_TRUE(r.holds());
}

TEST(Network, GoldenTraceOfFourByFourExample) {
  const std::vector<std::string> trace = evolve_trace(S("1000"), S("0100"), 4);
  std::ifstream in(CSLAB_GOLDEN_DIR "/trace_1000_0100.txt");
  ASSERT_TRUE(in) << "missing golden file";
  std::vector<std::string> golden;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) golden.push_back(line);
  }
  EXPECT_EQ(trace, golden);
  ASSERT_EQ(trace.size(), 9U);
  for (std::size_t h = 0; h < trace.size(); ++h) {
    const auto naive = oracle::naive_wires(S("1000"), S("0100"), -8, 8, static_cast<long>(h));
    EXPECT_EQ(trace[h], oracle::to_trace(naive)) << "half-step " << h;
  }
}

TEST(Network, WordParallelMatchesNaiveCellSimulation) {
  SplitMix64 gen(Seed{21, 0});
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + gen.next() % 80;
    const std::size_t extra_a = gen.next() % 5, extra_b = gen.next() % 5;
    const BinaryString a = random_string(n + extra_a, gen), b = random_string(n + extra_b, gen);
    const SiteSequence s = evolve_step_ic(a, b, n);
    const auto lo = -static_cast<long>(2 * n), hi = static_cast<long>(2 * n);
    ASSERT_EQ(s.origin_index(), lo);
    ASSERT_EQ(s.end_index(), hi);
    ASSERT_EQ(s.halfstep(), 2 * n);
    ASSERT_EQ(values(s), oracle::naive_wires(a, b, lo, hi, hi)) << "n=" << n;
  }
}

TEST(Network, BottomOutputsMatchGridOracleAndLcs) {
  SplitMix64 gen(Seed{22, 0});
  for (int t = 0; t < 400; ++t) {
    const std::size_t m = gen.next() % 90, n = gen.next() % 90;
    const BinaryString a = random_string(m, gen), b = random_string(n, gen);
    const auto cols = oracle::grid_bottom_outputs(a, b);
    const std::size_t grid = static_cast<std::size_t>(std::count(cols.begin(), cols.end(), 1));
    ASSERT_EQ(grid, oracle::lcs_table(a, b));
    ASSERT_EQ(bottom_output_particles(a, b), grid) << a.to_string() << ' ' << b.to_string();
  }
}

TEST(Network, IdenticalStringsSendEveryParticleDown) {
  const BinaryString x = random_string(77, Seed{5, 5});
  EXPECT_EQ(bottom_output_particles(x, x), 77U);
}

TEST(Network, ConservationPerHalfStep) {
  const BinaryString a = random_string(40, Seed{6, 0}), b = random_string(40, Seed{6, 1});
  TranspositionNetwork net(a, b, SiteSequence::step_initial_condition(-80, 80));
  for (int h = 0; h < 80; ++h) {
    net.advance();
    ASSERT_EQ(net.state().particle_count(), 80U);
  }
  const BinaryString ones = S("11111111"), zeros = S("00000000");
  EXPECT_EQ(evolve_step_ic(ones, zeros, 8).particle_count(), 16U);
}

TEST(Network, ExchangeCountEqualsMovedParticles) {
  const BinaryString a = random_string(30, Seed{7, 0}), b = random_string(30, Seed{7, 1});
  TranspositionNetwork net(a, b, SiteSequence::step_initial_condition(-60, 60));
  for (int h = 0; h < 60; ++h) {
    const SiteSequence before = net.state();
    const std::size_t swaps = net.advance();
    std::size_t moved = 0;
    for (std::int64_t w = -60; w < 60; ++w) moved += before.particle(w) != net.state().particle(w);
    ASSERT_EQ(2 * swaps, moved);
  }
}

TEST(Network, WindowTooSmallIsRejected) {
  const BinaryString a = random_string(8, Seed{8, 0}), b = random_string(8, Seed{8, 1});
  TranspositionNetwork net(a, b, SiteSequence::step_initial_condition(-2, 2));
  EXPECT_THROW(
      {
        for (int h = 0; h < 16; ++h) net.advance();
      },
      InputError);
}

TEST(Network, ShortStringsAreRejected) {
  EXPECT_THROW(evolve_step_ic(S("10"), S("0100"), 3), InputError);
  EXPECT_THROW(crossing_report(S("1000"), S("0100"), 4, 9), InputError);
  EXPECT_THROW(crossing_report(S("1000"), S("0100"), 4, 1), InputError);
}

TEST(Crossing, MatchesLcsOfPrefixesForEverySplit) {
  SplitMix64 gen(Seed{23, 0});
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + gen.next() % 32;
    const BinaryString a = random_string(2 * n, gen), b = random_string(2 * n, gen);
    for (std::size_t k = 0; k <= 2 * n; ++k) {
      const CrossingReport r = crossing_report(a, b, n, k);
      ASSERT_EQ(r.l, oracle::lcs_table(a.prefix(k), b.prefix(2 * n - k)));
      ASSERT_EQ(r.particles_at_or_above + r.l, k) << "n=" << n << " k=" << k;
    }
  }
  const BinaryString a = S("10"), b = S("01");
  EXPECT_EQ(crossing_report(a, b, 1, 0).particles_at_or_above, 0U);
}

TEST(Duality, InvolutionAndValueExchange) {
  SplitMix64 gen(Seed{24, 0});
  for (int t = 0; t < 100; ++t) {
    SiteSequence s(-static_cast<std::int64_t>(gen.next() % 100), gen.next() % 150, gen.next() % 4);
    for (std::int64_t w = s.origin_index(); w < s.end_index(); ++w) s.set(w, gen.next() & 1U);
    const SiteSequence d = dualize(s);
    EXPECT_EQ(dualize(d), s);
    EXPECT_EQ(d.particle_count(), s.hole_count());
    EXPECT_EQ(d.size(), s.size());
    for (std::int64_t w = s.origin_index(); w < s.end_index(); ++w) ASSERT_NE(d.particle(-1 - w), s.particle(w));
  }
}

TEST(Duality, StepInitialConditionIsSelfDual) {
  for (std::int64_t n = 0; n < 70; ++n) {
    const SiteSequence s = SiteSequence::step_initial_condition(-n, n);
    EXPECT_EQ(dualize(s), s);
  }
}

TEST(Duality, DualOfEvolutionIsEvolutionOfSwappedPair) {
  SplitMix64 gen(Seed{25, 0});
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + gen.next() % 60;
    const BinaryString a = random_string(n, gen), b = random_string(n, gen);
    ASSERT_EQ(dualize(evolve_step_ic(a, b, n)), evolve_step_ic(b, a, n));
    ASSERT_EQ(dualize(evolve_step_ic(a, b, n)), evolve_step_ic(b.complement(), a.complement(), n));
  }
}

TEST(Independence, TriplesLookUniformAndQuadrupleIsDetermined) {
  const IndependenceReport r = independence_test(100000, 6, 31);
  ASSERT_EQ(r.triples.size(), 5U);
  for (const TripleStat& t : r.triples) {
    EXPECT_GT(t.p_value, 0.001) << t.label;
    std::size_t total = 0;
    for (std::size_t c : t.counts) total += c;
    EXPECT_EQ(total, 100000U);
  }
  EXPECT_EQ(r.parity_violations, 0U);
  EXPECT_GT(r.blocks_checked, 0U);
  EXPECT_EQ(r.quad.determined_fraction, 1.0);
  EXPECT_LT(r.quad.p_value, 1e-12);
}

TEST(Independence, InputGuards) {
  EXPECT_THROW(independence_test(100000, 2, 1), InputError);
  EXPECT_THROW(independence_test(9999, 5, 1), InputError);
}
