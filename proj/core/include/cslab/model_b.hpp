#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cslab/site_sequence.hpp"

namespace cslab {

// Bernoulli network-evolution model: a discrete-time TASEP with
// sublattice-parallel update. Every cell reads its entry pair
// (left, top) = (x, y) and draws its type with probability p_{2x+y} of
// being a mismatch. Only the unsorted pair (particle, hole) reacts to the
// type, so p2 is the jump rate and p0 = p3, p1 are pseudo-rates that never
// change the site values.
//
// Coins are counter-keyed by (seed, half-step, right wire of the cell), so a
// trajectory is independent of update order and of the pseudo-rates.

struct ModelBParams {
  double p2 = 0.5;
  double p0 = 0.5;
  double p1 = 0.5;

  double p3() const { return p0; }
  /// Probability that a cell with entry pair index 2 * left + top is a mismatch.
  double rate_for(unsigned entry) const;
  /// Throws InputError unless every parameter lies in [0, 1].
  void validate() const;
};

struct StationaryMarginals {
  double u = 0.5;     // particle density on the sublattice entering from the top
  double ubar = 0.5;  // 1 - u
};

/// Root in [0, 1/2] of u^2 = (1 - u)^2 (1 - p2): u = s / (1 + s), s = sqrt(1 - p2).
StationaryMarginals stationary_u(double p2);

/// Product measure on wires [0, L): particle probability u on even wires and
/// 1 - u on odd wires. L must be even.
SiteSequence sample_stationary(std::size_t L, double u, std::uint64_t seed);

/// sample_stationary conditioned on exactly L / 2 particles (rejection
/// sampling over successive streams). This is the product measure restricted
/// to the half-filled sector, which the particle-conserving ring dynamics
/// leaves invariant.
SiteSequence sample_stationary_half_filled(std::size_t L, double u, std::uint64_t seed);

enum class Boundary { ring, open };

struct HalfStepStats {
  std::size_t active_pairs = 0;
  std::size_t unsorted_pairs = 0;  // (particle, hole) entry pairs
  std::size_t swaps = 0;
  std::size_t mismatches = 0;      // only filled when cell types are sampled
};

class ModelBEvolution {
 public:
  /// With Boundary::ring the window is a cycle and its size must be even.
  /// With `sample_types` every active cell also draws its type so that
  /// HalfStepStats::mismatches is filled; the trajectory is unaffected.
  ModelBEvolution(SiteSequence state, ModelBParams params, std::uint64_t seed,
                  Boundary boundary = Boundary::ring, bool sample_types = false);

  HalfStepStats advance();

  const SiteSequence& state() const { return state_; }
  const ModelBParams& params() const { return params_; }

 private:
  SiteSequence state_;
  ModelBParams params_;
  std::uint64_t seed_;
  Boundary boundary_;
  bool sample_types_;
  std::vector<Word> swaps_;
};

/// One half-step of model B applied to a copy of `s`.
SiteSequence halfstep(const SiteSequence& s, const ModelBParams& params, std::uint64_t seed,
                      Boundary boundary = Boundary::ring);

/// Joint frequencies of an adjacent pair, indexed 2 * left + right.
struct PairStats {
  std::array<double, 4> observed{};
  std::array<double, 4> expected{};
  std::array<double, 4> stderr_{};
};

struct SeriesRow {
  std::uint64_t halfstep = 0;
  double even_density = 0.0;
  double odd_density = 0.0;
  double swap_rate = 0.0;
};

// Densities are reported in the co-moving frame of the diagonal evolution:
// at half-step h the "even" sublattice is the set of wires with the parity
// of h, i.e. the right members of the active pairs (even wires at even h).
// In stationarity it carries particle density u.
struct InvarianceReport {
  double p2 = 0.0;
  StationaryMarginals theory;
  std::size_t L = 0;
  std::size_t burn_in = 0;
  std::size_t measure_steps = 0;

  double even_density = 0.0;
  double even_density_stderr = 0.0;
  double odd_density = 0.0;
  double odd_density_stderr = 0.0;
  PairStats active;  // (left, right) of pairs about to be compared
  PairStats seam;    // pairs straddling two cells

  double swap_rate = 0.0;  // exchanges per active pair
  double swap_rate_expected = 0.0;
  double swap_rate_stderr = 0.0;
  std::size_t total_swaps = 0;
  /// Sites whose value differs from the initial configuration at any
  /// measured half-step boundary; zero means the configuration was frozen.
  std::size_t max_changed_sites = 0;

  std::vector<SeriesRow> series;
};

/// Starts a ring of length L (even, >= 2) from the half-filled stationary
/// sample for stationary_u(p2), runs `burn_in` half-steps, then measures
/// single-site and adjacent-pair statistics over `measure_steps` half-steps.
/// Standard errors come from batch means.
InvarianceReport invariance_test(double p2, std::size_t L, std::size_t burn_in,
                                 std::size_t measure_steps, std::uint64_t seed);

struct FluxReport {
  double swaps_per_pair = 0.0;
  double swaps_per_pair_stderr = 0.0;
  double f = 0.0;
  double fbar = 0.0;
  double gamma_proxy = 0.0;  // 2u with u the measured even-sublattice density
  StationaryMarginals theory;
  double f_theory = 0.0;     // (1 - u)^2 p2 = 1 - 2u
};

FluxReport measure_flux(double p2, std::size_t L, std::size_t steps, std::uint64_t seed,
                        std::size_t burn_in = 1000);

/// CSV with header "halfstep,even_density,odd_density,swap_rate".
void write_series_csv(std::ostream& out, const std::vector<SeriesRow>& series);

}  // namespace cslab
