#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lgbwt/ext_char.hpp"

namespace lgbwt {

/// Suffix array by prefix doubling with radix-sorted rank pairs, O(n log n).
/// Inputs longer than 2^32 - 1 are rejected with Error(TooLarge).
std::vector<std::uint32_t> suffix_array(std::span<const ExtChar> s);

}  // namespace lgbwt
