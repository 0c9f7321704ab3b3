#pragma once

#include <cstddef>
#include <string_view>

#include "cslab/binary_string.hpp"
#include "cslab/rng.hpp"

namespace cslab {

enum class LcsEngine { dp, bitparallel, bruteforce };

std::string_view to_string(LcsEngine engine);
/// Accepts "dp", "bitparallel", "bruteforce"; throws InputError otherwise.
LcsEngine parse_engine(std::string_view name);

struct LcsResult {
  std::size_t length = 0;
  LcsEngine engine = LcsEngine::dp;
};

/// Largest shorter-side length the brute-force oracle accepts.
inline constexpr std::size_t kBruteforceMaxSide = 20;

/// Row-by-row dynamic program; O(m n) time, O(min(m, n)) memory.
LcsResult lcs_dp(const BinaryString& a, const BinaryString& b);

/// Word-parallel engine: the shorter string is laid out along the bits of a
/// machine-word vector and the longer one is scanned character by character
/// with the carry-propagating update V <- (V + (V & M_c)) | (V & ~M_c).
/// The zero bits of V after the scan are the particles that left the
/// transposition network at the bottom, so their count is the LCS length.
LcsResult lcs_bitparallel(const BinaryString& a, const BinaryString& b);

/// Enumerates subsequences of the shorter string. Throws SizeGuardError when
/// min(m, n) > kBruteforceMaxSide.
LcsResult lcs_bruteforce(const BinaryString& a, const BinaryString& b);

LcsResult lcs(const BinaryString& a, const BinaryString& b, LcsEngine engine);

/// n i.i.d. uniform bits from the stream (seed.master, seed.stream).
BinaryString random_string(std::size_t n, Seed seed);
/// n i.i.d. uniform bits drawn from `gen`; consumes ceil(n / 64) outputs.
BinaryString random_string(std::size_t n, SplitMix64& gen);

}  // namespace cslab
