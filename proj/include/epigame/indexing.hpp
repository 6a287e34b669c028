#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace epigame {

/// Mixed-radix helpers shared by the enumeration code.  A "digit" vector d
/// with radices r encodes the flat index d[0]*r[1]*...*r[k-1] + ... + d[k-1];
/// digit 0 is the most significant, the last digit varies fastest.

inline std::size_t flat_index(std::span<const std::size_t> digits,
                              std::span<const std::size_t> radices) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) index = index * radices[i] + digits[i];
  return index;
}

inline std::vector<std::size_t> unflatten(std::size_t index,
                                          std::span<const std::size_t> radices) {
  std::vector<std::size_t> digits(radices.size(), 0);
  for (std::size_t i = radices.size(); i-- > 0;) {
    digits[i] = index % radices[i];
    index /= radices[i];
  }
  return digits;
}

/// Advances to the next digit vector in lexicographic order.
/// Returns false (leaving all digits zero) after the last one.
inline bool next_digits(std::vector<std::size_t>& digits,
                        std::span<const std::size_t> radices) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radices[i]) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace epigame
