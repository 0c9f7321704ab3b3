#include <gtest/gtest.h>

#include "cslab/binary_string.hpp"
#include "cslab/errors.hpp"
#include "cslab/lcs.hpp"

using namespace cslab;

TEST(BinaryString, RoundTripsText) {
  for (const char* s : {"", "0", "1", "1000", "0100", "0110100110010110011010010110100101"}) {
    EXPECT_EQ(BinaryString::parse(s).to_string(), s);
  }
}

TEST(BinaryString, AcceptsLetterAlphabet) {
  EXPECT_EQ(BinaryString::parse("IOOO"), BinaryString::parse("1000"));
  EXPECT_EQ(BinaryString::parse("oIoo"), BinaryString::parse("0100"));
  EXPECT_EQ(BinaryString::parse("iO1o").to_string(), "1010");
}

TEST(BinaryString, RejectsOtherCharacters) {
  EXPECT_THROW(BinaryString::parse("10Z1"), InputError);
  EXPECT_THROW(BinaryString::parse("2"), InputError);
  EXPECT_THROW(BinaryString::parse("1 0"), InputError);
}

TEST(BinaryString, StorageBeyondLengthIsZero) {
  for (std::size_t n : {1U, 63U, 64U, 65U, 130U}) {
    const BinaryString s = random_string(n, Seed{3, n});
    ASSERT_EQ(s.size(), n);
    const auto words = s.bits().words();
    ASSERT_EQ(words.size(), words_for(n));
    if (n % kWordBits != 0) EXPECT_EQ(words.back() >> (n % kWordBits), 0U);
    EXPECT_EQ(s.complement().bits().words().back() >> (n % kWordBits) << (n % kWordBits),
              n % kWordBits != 0 ? 0U : s.complement().bits().words().back());
  }
}

TEST(BinaryString, PrefixAndComplement) {
  const BinaryString s = BinaryString::parse("110100");
  EXPECT_EQ(s.prefix(3).to_string(), "110");
  EXPECT_EQ(s.prefix(0).to_string(), "");
  EXPECT_THROW(s.prefix(7), InputError);
  EXPECT_EQ(s.complement().to_string(), "001011");
  EXPECT_EQ(s.count_ones(), 3U);
}

TEST(PackedBits, ExtractReadsZerosOutsideRange) {
  PackedBits b(70, true);
  EXPECT_EQ(b.extract(0), ~Word{0});
  EXPECT_EQ(b.extract(-3), ~Word{0} << 3);
  EXPECT_EQ(b.extract(64), low_mask(6));
  EXPECT_EQ(b.extract(-64), 0U);
  EXPECT_EQ(b.extract(200), 0U);
  EXPECT_EQ(b.count(3, 67), 64U);
}
