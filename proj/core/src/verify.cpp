#include "cslab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cslab/errors.hpp"
#include "cslab/fit.hpp"
#include "cslab/lcs.hpp"
#include "cslab/model_b.hpp"
#include "cslab/network.hpp"
#include "cslab/rng.hpp"

namespace cslab {

namespace {

std::string count_detail(std::size_t checked, std::size_t failures) {
  return std::to_string(checked) + " checked, " + std::to_string(failures) + " failed";
}

CheckResult tally(std::string name, std::size_t checked, std::size_t failures) {
  return {std::move(name), failures == 0 && checked > 0, count_detail(checked, failures)};
}

CheckResult cell_parity(std::uint64_t seed) {
  std::size_t checked = 0, failures = 0;
  for (unsigned v = 0; v < 16; ++v) {
    const unsigned a0 = v & 1U, a1 = (v >> 1) & 1U, b0 = (v >> 2) & 1U, b1 = (v >> 3) & 1U;
    const auto sum = static_cast<unsigned>(cell_type(a0, b0)) + static_cast<unsigned>(cell_type(a0, b1)) +
                     static_cast<unsigned>(cell_type(a1, b0)) + static_cast<unsigned>(cell_type(a1, b1));
    ++checked;
    if (sum % 2 != 0) ++failures;
  }
  for (std::uint64_t t = 0; t < 64; ++t) {
    const BinaryString a = random_string(33, Seed{seed, 2 * t});
    const BinaryString b = random_string(33, Seed{seed, 2 * t + 1});
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      for (std::size_t j = 0; j + 1 < b.size(); ++j) {
        const auto sum = static_cast<unsigned>(cell_type(a[i], b[j])) +
                         static_cast<unsigned>(cell_type(a[i], b[j + 1])) +
                         static_cast<unsigned>(cell_type(a[i + 1], b[j])) +
                         static_cast<unsigned>(cell_type(a[i + 1], b[j + 1]));
        ++checked;
        if (sum % 2 != 0) ++failures;
      }
    }
  }
  return tally("cell_type_parity", checked, failures);
}

CheckResult network_conservation(std::uint64_t seed) {
  std::size_t checked = 0, failures = 0;
  for (std::uint64_t t = 0; t < 32; ++t) {
    const std::size_t n = 1 + t;
    SplitMix64 gen(Seed{seed ^ 0x636f6e73ULL, t});
    const BinaryString a = random_string(n, gen);
    const BinaryString b = random_string(n, gen);
    const auto w = static_cast<std::int64_t>(2 * n);
    TranspositionNetwork net(a, b, SiteSequence::step_initial_condition(-w, w));
    const std::size_t before = net.state().particle_count();
    for (std::size_t h = 0; h < 2 * n; ++h) {
      net.advance();
      ++checked;
      if (net.state().particle_count() != before) ++failures;
    }
  }
  return tally("network_conservation", checked, failures);
}

CheckResult model_b_conservation(std::uint64_t seed) {
  std::size_t checked = 0, failures = 0;
  const ModelBParams params{0.5, 0.3, 0.7};
  for (Boundary boundary : {Boundary::ring, Boundary::open}) {
    ModelBEvolution evo(sample_stationary(256, stationary_u(0.5).u, seed), params, seed, boundary);
    const std::size_t before = evo.state().particle_count();
    for (int h = 0; h < 512; ++h) {
      evo.advance();
      ++checked;
      if (evo.state().particle_count() != before) ++failures;
    }
  }
  return tally("model_b_conservation", checked, failures);
}

SiteSequence random_sites(std::int64_t origin, std::size_t size, std::uint64_t halfstep,
                          SplitMix64& gen) {
  SiteSequence s(origin, size, halfstep);
  for (std::int64_t w = s.origin_index(); w < s.end_index(); ++w) s.set(w, gen.next() & 1U);
  return s;
}

CheckResult duality_involution(std::uint64_t seed) {
  std::size_t checked = 0, failures = 0;
  SplitMix64 gen(Seed{seed, 0x6475616cULL});
  for (std::size_t size = 0; size < 200; size += 7) {
    for (std::int64_t origin : {-100, -13, 0, 5}) {
      const SiteSequence s = random_sites(origin, size, size % 3, gen);
      const SiteSequence d = dualize(s);
      ++checked;
      if (dualize(d) != s || d.particle_count() != s.hole_count()) ++failures;
    }
  }
  return tally("duality_involution", checked, failures);
}

CheckResult step_ic_self_dual() {
  std::size_t checked = 0, failures = 0;
  for (std::int64_t half = 0; half <= 130; ++half) {
    const SiteSequence s = SiteSequence::step_initial_condition(-half, half);
    ++checked;
    if (dualize(s) != s) ++failures;
  }
  return tally("step_ic_self_dual", checked, failures);
}

CheckResult duality_commutes(std::uint64_t seed) {
  std::size_t checked = 0, failures = 0;
  for (std::uint64_t t = 0; t < 40; ++t) {
    const std::size_t n = 1 + (t * 5) % 70;
    SplitMix64 gen(Seed{seed ^ 0x636f6d6dULL, t});
    const BinaryString a = random_string(n, gen);
    const BinaryString b = random_string(n, gen);
    ++checked;
    if (dualize(evolve_step_ic(a, b, n)) != evolve_step_ic(b, a, n)) ++failures;
  }
  return tally("duality_commutes_with_evolution", checked, failures);
}

CheckResult pseudo_rate_invisibility(std::uint64_t seed) {
  std::size_t checked = 0, failures = 0;
  const double p2 = 0.5;
  const std::vector<ModelBParams> variants{{p2, 0.0, 0.0}, {p2, 1.0, 1.0}, {p2, 0.25, 0.9}};
  for (Boundary boundary : {Boundary::ring, Boundary::open}) {
    const SiteSequence start = sample_stationary(500 - 500 % 2, stationary_u(p2).u, seed);
    ModelBEvolution reference(start, {p2, 0.5, 0.5}, seed, boundary);
    std::vector<ModelBEvolution> others;
    for (const ModelBParams& p : variants) others.emplace_back(start, p, seed, boundary, true);
    for (int h = 0; h < 400; ++h) {
      reference.advance();
      for (ModelBEvolution& e : others) {
        e.advance();
        ++checked;
        if (e.state() != reference.state()) ++failures;
      }
    }
  }
  return tally("pseudo_rate_invisibility", checked, failures);
}

CheckResult crossing_counts(std::uint64_t seed) {
  std::size_t checked = 0, failures = 0;
  for (std::uint64_t t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 16;
    SplitMix64 gen(Seed{seed ^ 0x63726f73ULL, t});
    const BinaryString a = random_string(2 * n, gen);
    const BinaryString b = random_string(2 * n, gen);
    for (std::size_t k = 0; k <= 2 * n; ++k) {
      const CrossingReport r = crossing_report(a, b, n, k);
      const std::size_t l = lcs_dp(a.prefix(k), b.prefix(2 * n - k)).length;
      ++checked;
      if (r.l != l || r.particles_at_or_above + l != k) ++failures;
    }
  }
  return tally("crossing_counts", checked, failures);
}

CheckResult engine_agreement(std::uint64_t seed) {
  std::size_t checked = 0, failures = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    SplitMix64 gen(Seed{seed ^ 0x656e67ULL, t});
    const std::size_t m = gen.next() % 13, n = gen.next() % 13;
    const BinaryString a = random_string(m, gen);
    const BinaryString b = random_string(n, gen);
    const std::size_t dp = lcs_dp(a, b).length;
    ++checked;
    if (lcs_bitparallel(a, b).length != dp || lcs_bruteforce(a, b).length != dp ||
        bottom_output_particles(a, b) != dp) {
      ++failures;
    }
  }
  return tally("engine_agreement", checked, failures);
}

CheckResult closed_form_residuals() {
  const FitSolution s = closed_form();
  double worst = 0.0;
  for (double r : s.residuals) worst = std::max(worst, std::abs(r));
  char buf[64];
  std::snprintf(buf, sizeof buf, "max |residual| = %.3g", worst);
  return {"closed_form_residuals", worst < 1e-12, buf};
}

}  // namespace

VerifySuite parse_suite(std::string_view name) {
  if (name == "exact") return VerifySuite::exact;
  throw InputError("unknown suite '" + std::string(name) + "'");
}

std::vector<CheckResult> run_exact_suite(std::uint64_t seed) {
  return {cell_parity(seed),           network_conservation(seed), model_b_conservation(seed),
          duality_involution(seed),    step_ic_self_dual(),        duality_commutes(seed),
          pseudo_rate_invisibility(seed), crossing_counts(seed),   engine_agreement(seed),
          closed_form_residuals()};
}

std::vector<CheckResult> run_suite(VerifySuite suite, std::uint64_t seed) {
  switch (suite) {
    case VerifySuite::exact:
      return run_exact_suite(seed);
  }
  return {};
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace cslab
