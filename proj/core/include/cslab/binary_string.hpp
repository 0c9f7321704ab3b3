#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "cslab/packed_bits.hpp"

namespace cslab {

/// A string over the binary alphabet, stored one bit per character.
///
/// Text form uses '0'/'1'. The letter alphabet {O, I} is accepted on input
/// (case-insensitive) with O -> 0 and I -> 1.
class BinaryString {
 public:
  BinaryString() = default;
  explicit BinaryString(PackedBits bits) : bits_(std::move(bits)) {}

  /// Throws InputError on any character outside {0,1,O,o,I,i}.
  static BinaryString parse(std::string_view text);

  std::string to_string() const;

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  unsigned operator[](std::size_t i) const { return bits_.get(i) ? 1U : 0U; }

  void push_back(unsigned bit) { bits_.push_back(bit != 0); }
  BinaryString prefix(std::size_t length) const;
  BinaryString complement() const;
  std::size_t count_ones() const { return bits_.count(); }

  const PackedBits& bits() const { return bits_; }

  friend bool operator==(const BinaryString&, const BinaryString&) = default;

 private:
  PackedBits bits_;
};

}  // namespace cslab
