#include "cslab/lcs.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "cslab/errors.hpp"

namespace cslab {

std::string_view to_string(LcsEngine engine) {
  switch (engine) {
    case LcsEngine::dp:
      return "dp";
    case LcsEngine::bitparallel:
      return "bitparallel";
    case LcsEngine::bruteforce:
      return "bruteforce";
  }
  return "unknown";
}

LcsEngine parse_engine(std::string_view name) {
  if (name == "dp") return LcsEngine::dp;
  if (name == "bitparallel") return LcsEngine::bitparallel;
  if (name == "bruteforce") return LcsEngine::bruteforce;
  throw InputError("unknown LCS engine '" + std::string(name) + "'");
}

LcsResult lcs_dp(const BinaryString& a, const BinaryString& b) {
  const BinaryString& row_str = a.size() >= b.size() ? a : b;
  const BinaryString& col_str = a.size() >= b.size() ? b : a;
  const std::size_t cols = col_str.size();

  std::vector<std::uint32_t> row(cols + 1, 0);
  for (std::size_t i = 0; i < row_str.size(); ++i) {
    const unsigned c = row_str[i];
    std::uint32_t diag = 0;  // row[j-1] of the previous row
    for (std::size_t j = 1; j <= cols; ++j) {
      const std::uint32_t up = row[j];
      row[j] = (col_str[j - 1] == c) ? diag + 1 : std::max(up, row[j - 1]);
      diag = up;
    }
  }
  return {row[cols], LcsEngine::dp};
}

LcsResult lcs_bitparallel(const BinaryString& a, const BinaryString& b) {
  const BinaryString& inner = a.size() <= b.size() ? a : b;
  const BinaryString& outer = a.size() <= b.size() ? b : a;
  const std::size_t m = inner.size();
  if (m == 0) return {0, LcsEngine::bitparallel};

  const std::size_t nwords = words_for(m);
  const Word tail_mask = low_mask(m - (nwords - 1) * kWordBits);

  std::vector<Word> match1(inner.bits().words().begin(), inner.bits().words().end());
  std::vector<Word> match0(nwords);
  for (std::size_t k = 0; k < nwords; ++k) match0[k] = ~match1[k];
  match0.back() &= tail_mask;

  std::vector<Word> v(nwords, ~Word{0});
  v.back() &= tail_mask;

  for (std::size_t j = 0; j < outer.size(); ++j) {
    const std::vector<Word>& match = outer[j] ? match1 : match0;
    Word carry = 0;
    for (std::size_t k = 0; k < nwords; ++k) {
      const Word vk = v[k];
      const Word u = vk & match[k];
      const Word s1 = vk + u;
      const Word c1 = s1 < vk ? 1 : 0;
      const Word s2 = s1 + carry;
      const Word c2 = s2 < s1 ? 1 : 0;
      carry = c1 | c2;
      v[k] = s2 | (vk & ~match[k]);
    }
    v.back() &= tail_mask;
  }

  std::size_t ones = 0;
  for (Word w : v) ones += static_cast<std::size_t>(std::popcount(w));
  return {m - ones, LcsEngine::bitparallel};
}

LcsResult lcs_bruteforce(const BinaryString& a, const BinaryString& b) {
  const BinaryString& shorter = a.size() <= b.size() ? a : b;
  const BinaryString& longer = a.size() <= b.size() ? b : a;
  const std::size_t k = shorter.size();
  if (k > kBruteforceMaxSide) {
    throw SizeGuardError("brute-force LCS oracle limited to min side " +
                         std::to_string(kBruteforceMaxSide) + ", got " + std::to_string(k));
  }

  // next_pos[p][c]: smallest q >= p with longer[q] == c, or n if none.
  const std::size_t n = longer.size();
  std::vector<std::array<std::uint32_t, 2>> next_pos(n + 1);
  next_pos[n] = {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n)};
  for (std::size_t p = n; p-- > 0;) {
    next_pos[p] = next_pos[p + 1];
    next_pos[p][longer[p]] = static_cast<std::uint32_t>(p);
  }

  std::size_t best = 0;
  const std::uint32_t limit = std::uint32_t{1} << k;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    const auto chosen = static_cast<std::size_t>(std::popcount(mask));
    if (chosen <= best) continue;
    std::size_t pos = 0;
    bool embedded = true;
    for (std::size_t i = 0; i < k && embedded; ++i) {
      if (!((mask >> i) & 1U)) continue;
      const std::uint32_t q = next_pos[pos][shorter[i]];
      if (q >= n) {
        embedded = false;
      } else {
        pos = q + 1;
      }
    }
    if (embedded) best = chosen;
  }
  return {best, LcsEngine::bruteforce};
}

LcsResult lcs(const BinaryString& a, const BinaryString& b, LcsEngine engine) {
  switch (engine) {
    case LcsEngine::dp:
      return lcs_dp(a, b);
    case LcsEngine::bitparallel:
      return lcs_bitparallel(a, b);
    case LcsEngine::bruteforce:
      return lcs_bruteforce(a, b);
  }
  throw InputError("unknown LCS engine");
}

BinaryString random_string(std::size_t n, SplitMix64& gen) {
  PackedBits bits(n);
  for (Word& w : bits.words()) w = gen.next();
  bits.trim();
  return BinaryString(std::move(bits));
}

BinaryString random_string(std::size_t n, Seed seed) {
  SplitMix64 gen(seed);
  return random_string(n, gen);
}

}  // namespace cslab
