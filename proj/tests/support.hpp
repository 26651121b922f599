#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "lgbwt/ext_char.hpp"
#include "lgbwt/grammar.hpp"
#include "lgbwt/sequence_collection.hpp"
#include "lgbwt/sorter.hpp"

namespace testing_support {

using lgbwt::ExtChar;
using lgbwt::ExtString;
using lgbwt::Grammar;
using lgbwt::SymbolId;

inline std::string random_string(std::mt19937_64& rng, std::size_t len, unsigned sigma) {
    std::uniform_int_distribution<unsigned> pick(0, sigma - 1);
    std::string s(len, 'a');
    for (char& c : s) c = static_cast<char>('a' + pick(rng));
    return s;
}

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Small random collection with duplicate and non-primitive records mixed in.
inline lgbwt::SequenceCollection random_collection(std::mt19937_64& rng, std::size_t max_records, std::size_t max_len) {
    static constexpr unsigned kSigmas[] = {1, 2, 3, 4};
    const unsigned sigma = kSigmas[uniform(rng, 0, 3)];
    std::vector<std::string> recs;
    const std::size_t n = uniform(rng, 1, max_records);
    while (recs.size() < n) {
        const std::size_t kind = uniform(rng, 0, 9);
        if (kind < 2 && !recs.empty()) {
            recs.push_back(recs[uniform(rng, 0, recs.size() - 1)]);
        } else if (kind < 4) {
            const std::size_t unit = uniform(rng, 1, std::max<std::size_t>(1, max_len / 3));
            const std::string u = random_string(rng, unit, sigma);
            std::string p;
            while (p.size() + u.size() <= max_len && (p.empty() || uniform(rng, 0, 2) != 0)) p += u;
            recs.push_back(p.empty() ? u : p);
        } else {
            recs.push_back(random_string(rng, uniform(rng, 1, max_len), sigma));
        }
    }
    return lgbwt::SequenceCollection::from_strings(recs);
}

inline std::vector<SymbolId> random_permutation(std::mt19937_64& rng, std::size_t n) {
    std::vector<SymbolId> perm(n + 1, 0);
    std::iota(perm.begin() + 1, perm.end(), SymbolId{1});
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    return perm;
}

/// The lexicographically sorted grammar of "abbabcbcabb".
inline Grammar running_example_grammar() {
    using lgbwt::Rule;
    Grammar g;
    g.assign({Rule{}, Rule::terminal(ExtChar::byte('a')), Rule::pair(1, 7), Rule::pair(2, 7), Rule::pair(3, 6),
              Rule::pair(1, 8), Rule::pair(5, 8), Rule::terminal(ExtChar::byte('b')), Rule::pair(7, 9),
              Rule::terminal(ExtChar::byte('c'))});
    g.roots = {4, 3};
    return g;
}

/// Sorting renames canonically, so isomorphic grammars sort to equal ones.
inline bool isomorphic(const Grammar& a, const Grammar& b) {
    if (a.size() != b.size() || a.roots.size() != b.roots.size()) return false;
    return lgbwt::sort_grammar(a).grammar == lgbwt::sort_grammar(b).grammar;
}

/// All strings over the first `sigma` letters of exactly length `len`, in order.
template <class F>
void for_each_string(std::size_t len, unsigned sigma, F&& f) {
    std::string s(len, 'a');
    while (true) {
        f(s);
        std::size_t i = len;
        while (i > 0 && s[i - 1] == static_cast<char>('a' + sigma - 1)) s[--i] = 'a';
        if (i == 0) return;
        ++s[i - 1];
    }
}

}  // namespace testing_support
