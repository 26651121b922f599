#include "lgbwt/suffix_array.hpp"

#include <algorithm>
#include <limits>

#include "lgbwt/error.hpp"

namespace lgbwt {

std::vector<std::uint32_t> suffix_array(std::span<const ExtChar> s) {
    const std::size_t n = s.size();
    if (n >= std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::TooLarge, "suffix array limited to 2^32-1 characters");
    }
    std::vector<std::uint32_t> sa(n);
    if (n == 0) return sa;

    // Compress the alphabet to dense ranks.
    std::vector<ExtChar> alphabet(s.begin(), s.end());
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    std::vector<std::uint32_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
        rank[i] = static_cast<std::uint32_t>(std::lower_bound(alphabet.begin(), alphabet.end(), s[i]) - alphabet.begin());
    }
    std::size_t classes = alphabet.size();

    std::vector<std::uint32_t> count(std::max(classes, n) + 1);
    std::vector<std::uint32_t> tmp(n);

    auto counting_sort = [&](const std::vector<std::uint32_t>& order) {
        std::fill(count.begin(), count.begin() + static_cast<std::ptrdiff_t>(classes) + 1, 0);
        for (std::uint32_t i : order) ++count[rank[i] + 1];
        for (std::size_t c = 1; c <= classes; ++c) count[c] += count[c - 1];
        for (std::uint32_t i : order) sa[count[rank[i]]++] = i;
    };

    for (std::size_t i = 0; i < n; ++i) tmp[i] = static_cast<std::uint32_t>(i);
    counting_sort(tmp);

    std::vector<std::uint32_t> next_rank(n);
    for (std::size_t k = 1; classes < n; k <<= 1) {
        // order by second key: suffixes without a k-successor come first
        std::size_t p = 0;
        for (std::size_t i = n - std::min(k, n); i < n; ++i) tmp[p++] = static_cast<std::uint32_t>(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (sa[j] >= k) tmp[p++] = static_cast<std::uint32_t>(sa[j] - k);
        }
        counting_sort(tmp);

        auto second = [&](std::uint32_t i) -> std::int64_t {
            return i + k < n ? static_cast<std::int64_t>(rank[i + k]) : -1;
        };
        next_rank[sa[0]] = 0;
        std::uint32_t c = 0;
        for (std::size_t j = 1; j < n; ++j) {
            const std::uint32_t a = sa[j - 1];
            const std::uint32_t b = sa[j];
            if (rank[a] != rank[b] || second(a) != second(b)) ++c;
            next_rank[b] = c;
        }
        rank.swap(next_rank);
        classes = static_cast<std::size_t>(c) + 1;
    }
    return sa;
}

}  // namespace lgbwt
