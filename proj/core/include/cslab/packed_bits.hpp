#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace cslab {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits =
    static_cast<std::size_t>(std::numeric_limits<Word>::digits);

constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// Mask with the low `bits` bits set; `bits` may equal kWordBits.
constexpr Word low_mask(std::size_t bits) {
  return bits >= kWordBits ? ~Word{0} : ((Word{1} << bits) - 1);
}

/// Fixed-length bit array packed into machine words, least significant bit
/// first. Storage bits at positions >= size() are always zero.
class PackedBits {
 public:
  PackedBits() = default;
  explicit PackedBits(std::size_t size, bool value = false);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t pos) const {
    return (words_[pos / kWordBits] >> (pos % kWordBits)) & 1U;
  }
  void set(std::size_t pos, bool value) {
    const Word bit = Word{1} << (pos % kWordBits);
    Word& w = words_[pos / kWordBits];
    w = value ? (w | bit) : (w & ~bit);
  }
  void push_back(bool value);
  void resize(std::size_t size);

  /// Population count over the whole array.
  std::size_t count() const;
  /// Population count over positions [first, last).
  std::size_t count(std::size_t first, std::size_t last) const;

  /// Bits [offset, offset + kWordBits) as one word; positions outside
  /// [0, size()) read as zero. `offset` may be negative.
  Word extract(std::ptrdiff_t offset) const;

  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  /// Clears storage bits above size(); call after writing through words().
  void trim();

  friend bool operator==(const PackedBits&, const PackedBits&) = default;

 private:
  std::vector<Word> words_;
  std::size_t size_ = 0;
};

}  // namespace cslab
