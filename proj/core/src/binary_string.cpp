#include "cslab/binary_string.hpp"

#include "cslab/errors.hpp"

namespace cslab {

BinaryString BinaryString::parse(std::string_view text) {
  PackedBits bits(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case '0':
      case 'O':
      case 'o':
        break;
      case '1':
      case 'I':
      case 'i':
        bits.set(i, true);
        break;
      default:
        throw InputError("invalid character '" + std::string(1, text[i]) + "' at position " +
                         std::to_string(i) + " (expected 0/1 or O/I)");
    }
  }
  return BinaryString(std::move(bits));
}

std::string BinaryString::to_string() const {
  std::string out(size(), '0');
  for (std::size_t i = 0; i < size(); ++i)
    if (bits_.get(i)) out[i] = '1';
  return out;
}

BinaryString BinaryString::prefix(std::size_t length) const {
  if (length > size()) throw InputError("prefix longer than string");
  PackedBits bits = bits_;
  bits.resize(length);
  return BinaryString(std::move(bits));
}

BinaryString BinaryString::complement() const {
  PackedBits bits = bits_;
  for (Word& w : bits.words()) w = ~w;
  bits.trim();
  return BinaryString(std::move(bits));
}

}  // namespace cslab
