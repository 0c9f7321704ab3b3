#include "cslab/model_b.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>

#include "cslab/errors.hpp"
#include "cslab/rng.hpp"

namespace cslab {

namespace {

constexpr Word kEvenBits = 0x5555555555555555ULL;
constexpr std::size_t kTopBit = kWordBits - 1;
constexpr std::size_t kMaxRejections = 1'000'000;

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InputError(std::string(name) + " = " + std::to_string(p) + " outside [0, 1]");
  }
}

// Positions p of the window whose wire origin + p has the parity of h.
Word parity_pattern(std::int64_t origin, std::uint64_t h) {
  const std::int64_t diff = static_cast<std::int64_t>(h & 1U) - (origin & 1);
  return (diff & 1) ? ~kEvenBits : kEvenBits;
}

Word valid_bits(const PackedBits& bits, std::size_t k) {
  const std::size_t nwords = bits.words().size();
  if (k + 1 < nwords) return ~Word{0};
  return low_mask(bits.size() - k * kWordBits);
}

// Values of the left neighbours aligned with word k (bit p holds site p - 1).
Word left_neighbours(std::span<const Word> words, std::size_t k, const PackedBits& bits,
                     bool ring) {
  Word carry_in = 0;
  if (k > 0) {
    carry_in = words[k - 1] >> kTopBit;
  } else if (ring && bits.size() > 0) {
    carry_in = bits.get(bits.size() - 1) ? 1 : 0;
  }
  return (words[k] << 1) | carry_in;
}

double batch_stderr(const std::vector<double>& xs) {
  constexpr std::size_t kBatches = 20;
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const std::size_t batches = std::min(kBatches, n);
  const std::size_t size = n / batches;
  std::vector<double> means;
  means.reserve(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t first = b * size;
    const std::size_t last = (b + 1 == batches) ? n : first + size;
    double s = 0.0;
    for (std::size_t i = first; i < last; ++i) s += xs[i];
    means.push_back(s / static_cast<double>(last - first));
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= static_cast<double>(batches);
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= static_cast<double>(batches - 1);
  return std::sqrt(var / static_cast<double>(batches));
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

}  // namespace

double ModelBParams::rate_for(unsigned entry) const {
  switch (entry & 3U) {
    case 0:
      return p0;
    case 1:
      return p1;
    case 2:
      return p2;
    default:
      return p3();
  }
}

void ModelBParams::validate() const {
  require_probability(p0, "p0");
  require_probability(p1, "p1");
  require_probability(p2, "p2");
}

StationaryMarginals stationary_u(double p2) {
  require_probability(p2, "p2");
  const double s = std::sqrt(1.0 - p2);
  const double u = s / (1.0 + s);
  return {u, 1.0 - u};
}

SiteSequence sample_stationary(std::size_t L, double u, std::uint64_t seed) {
  if (L % 2 != 0) throw InputError("stationary sample needs an even window, got L = " + std::to_string(L));
  require_probability(u, "u");
  SiteSequence s(0, L);
  SplitMix64 gen(Seed{seed, 0});
  for (std::size_t p = 0; p < L; ++p) {
    const double prob = (p % 2 == 0) ? u : 1.0 - u;
    if (gen.uniform() < prob) s.bits().set(p, true);
  }
  return s;
}

SiteSequence sample_stationary_half_filled(std::size_t L, double u, std::uint64_t seed) {
  if (L % 2 != 0) throw InputError("stationary sample needs an even window, got L = " + std::to_string(L));
  require_probability(u, "u");
  for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
    SiteSequence s(0, L);
    SplitMix64 gen(Seed{seed, attempt});
    for (std::size_t p = 0; p < L; ++p) {
      const double prob = (p % 2 == 0) ? u : 1.0 - u;
      if (gen.uniform() < prob) s.bits().set(p, true);
    }
    if (s.particle_count() * 2 == L) return s;
  }
  throw NumericError("no half-filled configuration after " + std::to_string(kMaxRejections) +
                     " rejection attempts");
}

ModelBEvolution::ModelBEvolution(SiteSequence state, ModelBParams params, std::uint64_t seed,
                                 Boundary boundary, bool sample_types)
    : state_(std::move(state)),
      params_(params),
      seed_(seed),
      boundary_(boundary),
      sample_types_(sample_types) {
  params_.validate();
  if (boundary_ == Boundary::ring && state_.size() % 2 != 0) {
    throw InputError("a ring needs an even number of sites");
  }
}

HalfStepStats ModelBEvolution::advance() {
  HalfStepStats stats;
  const std::uint64_t h = state_.halfstep();
  state_.set_halfstep(h + 1);
  PackedBits& bits = state_.bits();
  if (bits.size() < 2) return stats;

  const bool ring = boundary_ == Boundary::ring;
  const std::int64_t origin = state_.origin_index();
  const Word pattern = parity_pattern(origin, h);
  auto words = bits.words();
  const std::size_t nwords = words.size();
  swaps_.assign(nwords, 0);

  for (std::size_t k = 0; k < nwords; ++k) {
    Word active = pattern & valid_bits(bits, k);
    if (k == 0 && !ring) active &= ~Word{1};
    const Word left = left_neighbours(words, k, bits, ring);
    const Word here = words[k];
    const Word unsorted = active & left & ~here;
    stats.active_pairs += static_cast<std::size_t>(std::popcount(active));
    stats.unsorted_pairs += static_cast<std::size_t>(std::popcount(unsorted));

    Word swap = 0;
    for (Word rest = unsorted; rest != 0; rest &= rest - 1) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(rest));
      const auto wire = static_cast<std::uint64_t>(origin + static_cast<std::int64_t>(k * kWordBits + bit));
      if (keyed_uniform(seed_, h, wire) < params_.p2) swap |= Word{1} << bit;
    }
    swaps_[k] = swap;
    stats.swaps += static_cast<std::size_t>(std::popcount(swap));

    if (sample_types_) {
      for (Word rest = active; rest != 0; rest &= rest - 1) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(rest));
        const auto wire = static_cast<std::uint64_t>(origin + static_cast<std::int64_t>(k * kWordBits + bit));
        const unsigned entry = static_cast<unsigned>(((left >> bit) & 1U) << 1 | ((here >> bit) & 1U));
        if (keyed_uniform(seed_, h, wire) < params_.rate_for(entry)) ++stats.mismatches;
      }
    }
  }

  for (std::size_t k = 0; k < nwords; ++k) {
    const Word swap = swaps_[k];
    if (swap == 0) continue;
    words[k] ^= swap ^ (swap >> 1);
    if (k > 0) {
      words[k - 1] ^= swap << kTopBit;
    } else if (swap & 1U) {
      const std::size_t last = bits.size() - 1;
      bits.set(last, !bits.get(last));
    }
  }
  return stats;
}

SiteSequence halfstep(const SiteSequence& s, const ModelBParams& params, std::uint64_t seed,
                      Boundary boundary) {
  ModelBEvolution evo(s, params, seed, boundary);
  evo.advance();
  return evo.state();
}

InvarianceReport invariance_test(double p2, std::size_t L, std::size_t burn_in,
                                 std::size_t measure_steps, std::uint64_t seed) {
  require_probability(p2, "p2");
  if (L < 2 || L % 2 != 0) throw InputError("ring length must be even and >= 2");
  if (measure_steps == 0) throw InputError("need at least one measured half-step");

  InvarianceReport r;
  r.p2 = p2;
  r.theory = stationary_u(p2);
  r.L = L;
  r.burn_in = burn_in;
  r.measure_steps = measure_steps;

  const double u = r.theory.u;
  const double ub = r.theory.ubar;
  r.active.expected = {u * ub, u * u, ub * ub, ub * u};
  r.seam.expected = {ub * u, ub * ub, u * u, u * ub};
  r.swap_rate_expected = ub * ub * p2;

  const SiteSequence initial = sample_stationary_half_filled(L, u, seed);
  ModelBEvolution evo(initial, ModelBParams{p2, 0.5, 0.5}, mix64(seed ^ 0x6d6f64656c2d62ULL));
  for (std::size_t t = 0; t < burn_in; ++t) evo.advance();

  const double half = static_cast<double>(L / 2);
  std::vector<double> even_series, odd_series, swap_series;
  std::array<std::vector<double>, 4> active_series, seam_series;

  for (std::size_t t = 0; t < measure_steps; ++t) {
    const SiteSequence& s = evo.state();
    const PackedBits& bits = s.bits();
    const auto words = bits.words();
    const Word pattern = parity_pattern(s.origin_index(), s.halfstep());

    std::size_t even = 0, odd = 0, changed = 0;
    std::array<std::size_t, 4> act{}, seam{};
    for (std::size_t k = 0; k < words.size(); ++k) {
      const Word valid = valid_bits(bits, k);
      const Word here = words[k];
      const Word left = left_neighbours(words, k, bits, true);
      even += static_cast<std::size_t>(std::popcount(here & pattern));
      odd += static_cast<std::size_t>(std::popcount(here & ~pattern & valid));
      changed += static_cast<std::size_t>(std::popcount(here ^ initial.bits().words()[k]));
      for (int pass = 0; pass < 2; ++pass) {
        const Word sel = (pass == 0 ? pattern : ~pattern) & valid;
        auto& c = pass == 0 ? act : seam;
        c[3] += static_cast<std::size_t>(std::popcount(sel & left & here));
        c[2] += static_cast<std::size_t>(std::popcount(sel & left & ~here));
        c[1] += static_cast<std::size_t>(std::popcount(sel & ~left & here));
        c[0] += static_cast<std::size_t>(std::popcount(sel & ~left & ~here));
      }
    }
    r.max_changed_sites = std::max(r.max_changed_sites, changed);

    const std::uint64_t h = s.halfstep();
    const HalfStepStats stats = evo.advance();
    r.total_swaps += stats.swaps;

    SeriesRow row;
    row.halfstep = h;
    row.even_density = static_cast<double>(even) / half;
    row.odd_density = static_cast<double>(odd) / half;
    row.swap_rate = static_cast<double>(stats.swaps) / static_cast<double>(stats.active_pairs);
    r.series.push_back(row);

    even_series.push_back(row.even_density);
    odd_series.push_back(row.odd_density);
    swap_series.push_back(row.swap_rate);
    for (std::size_t i = 0; i < 4; ++i) {
      active_series[i].push_back(static_cast<double>(act[i]) / half);
      seam_series[i].push_back(static_cast<double>(seam[i]) / half);
    }
  }

  r.even_density = mean_of(even_series);
  r.even_density_stderr = batch_stderr(even_series);
  r.odd_density = mean_of(odd_series);
  r.odd_density_stderr = batch_stderr(odd_series);
  r.swap_rate = mean_of(swap_series);
  r.swap_rate_stderr = batch_stderr(swap_series);
  for (std::size_t i = 0; i < 4; ++i) {
    r.active.observed[i] = mean_of(active_series[i]);
    r.active.stderr_[i] = batch_stderr(active_series[i]);
    r.seam.observed[i] = mean_of(seam_series[i]);
    r.seam.stderr_[i] = batch_stderr(seam_series[i]);
  }
  return r;
}

FluxReport measure_flux(double p2, std::size_t L, std::size_t steps, std::uint64_t seed,
                        std::size_t burn_in) {
  const InvarianceReport inv = invariance_test(p2, L, burn_in, steps, seed);
  FluxReport f;
  f.swaps_per_pair = inv.swap_rate;
  f.swaps_per_pair_stderr = inv.swap_rate_stderr;
  f.f = inv.swap_rate;
  f.fbar = 1.0 - inv.swap_rate;
  f.gamma_proxy = 2.0 * inv.even_density;
  f.theory = inv.theory;
  f.f_theory = inv.swap_rate_expected;
  return f;
}

void write_series_csv(std::ostream& out, const std::vector<SeriesRow>& series) {
  const auto old_precision = out.precision(17);
  out << "halfstep,even_density,odd_density,swap_rate\n";
  for (const SeriesRow& row : series) {
    out << row.halfstep << ',' << row.even_density << ',' << row.odd_density << ','
        << row.swap_rate << '\n';
  }
  out.precision(old_precision);
}

}  // namespace cslab
