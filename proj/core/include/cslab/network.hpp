#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cslab/binary_string.hpp"
#include "cslab/packed_bits.hpp"
#include "cslab/site_sequence.hpp"

namespace cslab {

// The LCS grid of strings a (rows, index i) and b (columns, index j) viewed
// as a transposition network. Cell (i, j) sits on anti-diagonal d = i + j
// and joins wires (w - 1, w) with w = j - i: its left entry site is on wire
// w - 1 and its top entry site on wire w. A mismatch cell carries a
// comparator that moves a particle arriving from the left past a hole
// arriving from the top; a match cell passes both values straight through.
//
// Diagonal evolution: half-step h processes anti-diagonal h. Even h acts on
// (odd, even) wire pairs, odd h on (even, odd) pairs; one time step is two
// half-steps.

enum class CellType : std::uint8_t { match = 0, mismatch = 1 };

constexpr CellType cell_type(unsigned a_i, unsigned b_j) {
  return ((a_i ^ b_j) & 1U) ? CellType::mismatch : CellType::match;
}

/// Word-parallel simulator of one transposition network. Site values and the
/// per-anti-diagonal comparator masks are packed into machine words.
class TranspositionNetwork {
 public:
  /// `state` must contain every wire pair touched by the half-steps that
  /// will be run; advance() throws InputError otherwise.
  TranspositionNetwork(const BinaryString& a, const BinaryString& b, SiteSequence state);

  /// Runs half-step state().halfstep() and returns the number of
  /// particle/hole exchanges it performed.
  std::size_t advance();

  const SiteSequence& state() const { return state_; }
  SiteSequence release() && { return std::move(state_); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  PackedBits rev_a_;        // rev_a_[t] = a[(T - t) / 2] on even T - t
  PackedBits rev_a_valid_;
  PackedBits spread_b_;     // spread_b_[y] = b[y / 2] on even y
  PackedBits spread_b_valid_;
  SiteSequence state_;
  std::vector<Word> swaps_;
};

/// State after n diagonal time steps from the step initial condition, on
/// the exact window of wires [-2n, 2n). Requires |a|, |b| >= n.
SiteSequence evolve_step_ic(const BinaryString& a, const BinaryString& b, std::size_t n);

/// Same evolution, returned as 2n + 1 trace lines (initial state, then one
/// line after each half-step); see SiteSequence::to_trace().
std::vector<std::string> evolve_trace(const BinaryString& a, const BinaryString& b,
                                      std::size_t n);

struct CrossingReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t l = 0;  // LCS of a[0, k) and b[0, 2n - k)
  std::size_t particles_at_or_above = 0;  // wires >= 2n - 2k after n steps

  bool holds() const { return particles_at_or_above + l == k; }
};

/// Counts particles at wires >= 2n - 2k after n steps and the LCS length of
/// the (k, 2n - k) prefixes. Needs 0 <= k <= 2n, |a| >= k, |b| >= 2n - k.
CrossingReport crossing_report(const BinaryString& a, const BinaryString& b, std::size_t n,
                               std::size_t k);

/// Runs the whole |a| x |b| network from the step initial condition and
/// counts particles leaving through the bottom boundary.
std::size_t bottom_output_particles(const BinaryString& a, const BinaryString& b);

/// Reflection about the main diagonal with particle/hole exchange: wire w
/// maps to -1 - w and every value is complemented.
SiteSequence dualize(const SiteSequence& s);

struct TripleStat {
  std::string label;
  std::array<std::pair<std::size_t, std::size_t>, 3> cells{};
  std::array<std::size_t, 8> counts{};
  double chi2 = 0.0;
  int dof = 7;
  double p_value = 1.0;
};

struct QuadStat {
  std::array<std::size_t, 16> counts{};
  double chi2 = 0.0;
  int dof = 15;
  double p_value = 1.0;
  /// Fraction of samples where the fourth type equals the XOR of the other three.
  double determined_fraction = 0.0;
};

struct IndependenceReport {
  std::size_t trials = 0;
  std::size_t n = 0;
  std::vector<TripleStat> triples;
  QuadStat quad;
  std::size_t blocks_checked = 0;
  std::size_t parity_violations = 0;
};

inline constexpr std::size_t kIndependenceMinTrials = 10000;

/// Samples `trials` (>= kIndependenceMinTrials) random string pairs of length n (n >= 3) and tests
/// fixed cell triples for joint uniformity of their types, a 2x2 quadruple
/// for dependence, and every 2x2 block for even type parity.
IndependenceReport independence_test(std::size_t trials, std::size_t n, std::uint64_t seed);

}  // namespace cslab
