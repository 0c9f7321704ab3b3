#include "cslab/packed_bits.hpp"

#include <bit>

namespace cslab {

PackedBits::PackedBits(std::size_t size, bool value)
    : words_(words_for(size), value ? ~Word{0} : Word{0}), size_(size) {
  trim();
}

void PackedBits::push_back(bool value) {
  if (size_ % kWordBits == 0) words_.push_back(0);
  ++size_;
  set(size_ - 1, value);
}

void PackedBits::resize(std::size_t size) {
  words_.resize(words_for(size), 0);
  size_ = size;
  trim();
}

std::size_t PackedBits::count() const {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t PackedBits::count(std::size_t first, std::size_t last) const {
  if (last > size_) last = size_;
  if (first >= last) return 0;
  std::size_t total = 0;
  std::size_t fw = first / kWordBits;
  const std::size_t lw = (last - 1) / kWordBits;
  for (std::size_t k = fw; k <= lw; ++k) {
    Word w = words_[k];
    if (k == fw) w &= ~low_mask(first % kWordBits);
    if (k == lw) w &= low_mask(last - k * kWordBits);
    total += static_cast<std::size_t>(std::popcount(w));
  }
  return total;
}

Word PackedBits::extract(std::ptrdiff_t offset) const {
  const auto bits = static_cast<std::ptrdiff_t>(kWordBits);
  const auto nwords = static_cast<std::ptrdiff_t>(words_.size());
  auto word_at = [&](std::ptrdiff_t k) -> Word {
    return (k >= 0 && k < nwords) ? words_[static_cast<std::size_t>(k)] : Word{0};
  };
  // floor division so negative offsets land in the right word
  std::ptrdiff_t k = offset / bits;
  std::ptrdiff_t r = offset % bits;
  if (r < 0) {
    r += bits;
    --k;
  }
  if (r == 0) return word_at(k);
  return (word_at(k) >> r) | (word_at(k + 1) << (bits - r));
}

void PackedBits::trim() {
  if (words_.empty()) return;
  const std::size_t tail = size_ % kWordBits;
  if (tail != 0) words_.back() &= low_mask(tail);
}

}  // namespace cslab
