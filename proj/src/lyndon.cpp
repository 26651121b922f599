#include "lgbwt/lyndon.hpp"

#include "lgbwt/error.hpp"
#include "lgbwt/suffix_array.hpp"

namespace lgbwt {

std::vector<Factor> duval_factorize(std::span<const ExtChar> s) {
    if (s.empty()) throw Error(ErrorCode::EmptyInput, "cannot factorize an empty string");
    std::vector<Factor> out;
    const std::size_t n = s.size();
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        std::size_t k = i;
        while (j < n && s[k] <= s[j]) {
            k = (s[k] < s[j]) ? i : k + 1;
            ++j;
        }
        const std::size_t period = j - k;
        while (i <= k) {
            out.push_back(Factor{i, period});
            i += period;
        }
    }
    return out;
}

bool is_lyndon(std::span<const ExtChar> s) {
    if (s.empty()) return false;
    // s is Lyndon iff its Lyndon factorization is s itself
    const std::size_t n = s.size();
    std::size_t j = 1;
    std::size_t k = 0;
    while (j < n && s[k] <= s[j]) {
        k = (s[k] < s[j]) ? 0 : k + 1;
        ++j;
    }
    return j == n && k == 0;
}

std::size_t standard_factorization(std::span<const ExtChar> s) {
    if (s.size() < 2 || !is_lyndon(s)) {
        throw Error(ErrorCode::NotFactorizable, "standard factorization needs a Lyndon word of length >= 2");
    }
    // The longest proper Lyndon suffix is the last Lyndon factor of s[1..].
    auto factors = duval_factorize(s.subspan(1));
    return 1 + factors.back().start;
}

std::size_t least_rotation(std::span<const ExtChar> s) {
    const std::size_t n = s.size();
    if (n == 0) throw Error(ErrorCode::EmptyInput, "least_rotation of an empty string");
    std::size_t i = 0;
    std::size_t j = 1;
    std::size_t k = 0;
    while (i < n && j < n && k < n) {
        const ExtChar a = s[(i + k) % n];
        const ExtChar b = s[(j + k) % n];
        if (a == b) {
            ++k;
            continue;
        }
        if (a > b) {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if (i == j) ++j;
        k = 0;
    }
    return std::min(i, j);
}

ExtString rotate(std::span<const ExtChar> s, std::size_t k) {
    ExtString out;
    out.reserve(s.size());
    out.insert(out.end(), s.begin() + static_cast<std::ptrdiff_t>(k), s.end());
    out.insert(out.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

std::weak_ordering omega_compare(std::span<const ExtChar> u, std::span<const ExtChar> v) {
    const std::size_t bound = u.size() + v.size();
    for (std::size_t i = 0; i < bound; ++i) {
        const ExtChar a = u[i % u.size()];
        const ExtChar b = v[i % v.size()];
        if (a != b) return a < b ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    return std::weak_ordering::equivalent;
}

std::vector<std::uint32_t> next_smaller_suffix(std::span<const ExtChar> s) {
    if (s.empty()) throw Error(ErrorCode::EmptyInput, "nss of an empty string");
    const auto sa = suffix_array(s);
    const std::size_t n = s.size();
    std::vector<std::uint32_t> rank(n);
    for (std::size_t r = 0; r < n; ++r) rank[sa[r]] = static_cast<std::uint32_t>(r);

    std::vector<std::uint32_t> nss(n);
    std::vector<std::uint32_t> stack;
    for (std::size_t i = n; i-- > 0;) {
        while (!stack.empty() && rank[stack.back()] > rank[i]) stack.pop_back();
        nss[i] = stack.empty() ? static_cast<std::uint32_t>(n) : stack.back();
        stack.push_back(static_cast<std::uint32_t>(i));
    }
    return nss;
}

std::vector<std::uint32_t> lyndon_array(std::span<const ExtChar> s) {
    auto lambda = next_smaller_suffix(s);
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] -= static_cast<std::uint32_t>(i);
    return lambda;
}

}  // namespace lgbwt
