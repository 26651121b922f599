#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lgbwt/ext_char.hpp"

namespace lgbwt {

struct Factor {
    std::size_t start = 0;
    std::size_t len = 0;

    bool operator==(const Factor&) const = default;
};

/// Lyndon factorization (Chen-Fox-Lyndon) by Duval's algorithm.
/// Factors are returned left to right and are lexicographically non-increasing.
std::vector<Factor> duval_factorize(std::span<const ExtChar> s);

/// True iff `s` is strictly smaller than each of its proper suffixes.
bool is_lyndon(std::span<const ExtChar> s);

/// Split point of the standard factorization: returns |u| where s = uv and v
/// is the longest proper Lyndon suffix of s.
std::size_t standard_factorization(std::span<const ExtChar> s);

/// Smallest index k such that s[k..] s[..k] is the minimal conjugate of s.
std::size_t least_rotation(std::span<const ExtChar> s);

ExtString rotate(std::span<const ExtChar> s, std::size_t k);

/// Compares u^inf against v^inf. Only the first |u|+|v| characters of each
/// expansion are inspected, which suffices by the Fine-Wilf periodicity bound.
std::weak_ordering omega_compare(std::span<const ExtChar> u, std::span<const ExtChar> v);

/// Lyndon array: lambda[i] is the length of the longest Lyndon prefix of s[i..].
/// Computed as nss[i] - i, where nss is the next-smaller-suffix array obtained
/// by a next-smaller-value scan over suffix ranks.
std::vector<std::uint32_t> lyndon_array(std::span<const ExtChar> s);

/// Next-smaller-suffix array (|s| where no smaller suffix follows).
std::vector<std::uint32_t> next_smaller_suffix(std::span<const ExtChar> s);

}  // namespace lgbwt
