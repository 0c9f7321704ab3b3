#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cslab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

enum class VerifySuite { exact };

/// Accepts "exact"; throws InputError otherwise.
VerifySuite parse_suite(std::string_view name);

/// Zero-tolerance invariant checks: cell-type parity, particle conservation
/// per half-step, duality, pseudo-rate invisibility, crossing counts, engine
/// agreement and the closed-form fit residuals.
std::vector<CheckResult> run_exact_suite(std::uint64_t seed);

std::vector<CheckResult> run_suite(VerifySuite suite, std::uint64_t seed);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace cslab
