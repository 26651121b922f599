#include "lgbwt/sorter.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "lgbwt/error.hpp"

namespace lgbwt {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedGrammar, what); }

void check_ids(const Grammar& g) {
    const std::size_t n = g.size();
    for (SymbolId i = 1; i <= n; ++i) {
        if (g.is_terminal(i)) continue;
        if (g.left(i) == kNullSymbol || g.left(i) > n || g.right(i) == kNullSymbol || g.right(i) > n) {
            malformed("rule " + std::to_string(i) + " references an unknown symbol");
        }
    }
}

}  // namespace

namespace {

struct PrefixCounts {
    std::vector<std::uint64_t> cnt;
    std::vector<SymbolId> leaves_first;  // every symbol before its left child
};

PrefixCounts prefix_counts(const Grammar& g) {
    const std::size_t n = g.size();
    check_ids(g);
    // Each symbol has at most one left child, so the "left" relation is a
    // forest and a Kahn pass from its leaves accumulates the counts.
    std::vector<std::uint32_t> indeg(n + 1, 0);
    for (SymbolId i = 1; i <= n; ++i) {
        if (!g.is_terminal(i)) ++indeg[g.left(i)];
    }
    PrefixCounts pc;
    pc.cnt.assign(n + 1, 1);
    pc.cnt[0] = 0;
    pc.leaves_first.reserve(n);
    std::vector<SymbolId> ready;
    for (SymbolId i = 1; i <= n; ++i) {
        if (indeg[i] == 0) ready.push_back(i);
    }
    while (!ready.empty()) {
        const SymbolId x = ready.back();
        ready.pop_back();
        pc.leaves_first.push_back(x);
        if (g.is_terminal(x)) continue;
        const SymbolId a = g.left(x);
        pc.cnt[a] += pc.cnt[x];
        if (--indeg[a] == 0) ready.push_back(a);
    }
    if (pc.leaves_first.size() != n) malformed("cycle along left children");
    return pc;
}

}  // namespace

std::vector<std::uint64_t> count_prefix_symbols(const Grammar& g) { return prefix_counts(g).cnt; }

SortedGrammar sort_grammar(const Grammar& g) {
    const std::size_t n = g.size();
    const PrefixCounts pc = prefix_counts(g);
    const std::vector<std::uint64_t>& cnt = pc.cnt;

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(n);
    std::vector<SymbolId> terminals;
    std::vector<std::uint32_t> second_start(n + 2, 0);
    for (SymbolId i = 1; i <= n; ++i) {
        if (g.is_terminal(i)) {
            terminals.push_back(i);
            continue;
        }
        const std::uint64_t key = (std::uint64_t{g.left(i)} << 32) | g.right(i);
        if (!seen.insert(key).second) malformed("duplicate right-hand side at rule " + std::to_string(i));
        ++second_start[g.right(i) + 1];
    }
    for (std::size_t i = 1; i < second_start.size(); ++i) second_start[i] += second_start[i - 1];
    // Symbols X_j -> X_a X_b grouped by b. Within a group, X_a must be
    // placed before X_j when both share b, so groups are filled with left
    // children ahead of their parents.
    std::vector<SymbolId> second_parents(second_start[n + 1]);
    {
        std::vector<std::uint32_t> fill(second_start.begin(), second_start.end() - 1);
        for (auto it = pc.leaves_first.rbegin(); it != pc.leaves_first.rend(); ++it) {
            if (!g.is_terminal(*it)) second_parents[fill[g.right(*it)]++] = *it;
        }
    }

    std::sort(terminals.begin(), terminals.end(),
              [&](SymbolId x, SymbolId y) { return g.terminal_char(x) < g.terminal_char(y); });
    for (std::size_t k = 1; k < terminals.size(); ++k) {
        if (g.terminal_char(terminals[k - 1]) == g.terminal_char(terminals[k])) malformed("duplicate terminal character");
    }

    SortedGrammar out;
    std::vector<SymbolId> order(n, kNullSymbol);  // kNullSymbol plays the role of "not yet known"
    std::vector<std::uint64_t> next_free(n + 1, 0);
    std::uint64_t iterations = 0;

    std::uint64_t s = 0;
    for (SymbolId t : terminals) {
        ++iterations;
        if (s >= n) malformed("prefix counts exceed the number of symbols");
        order[s] = t;
        s += cnt[t];
        next_free[t] = s;
    }
    if (s != n) malformed("prefix counts do not cover all symbols");

    for (std::size_t i = n; i-- > 0;) {
        ++iterations;
        const SymbolId b = order[i];
        if (b == kNullSymbol) malformed("symbol at rank " + std::to_string(i) + " was never induced");
        for (std::uint32_t k = second_start[b]; k < second_start[b + 1]; ++k) {
            ++iterations;
            const SymbolId j = second_parents[k];
            const SymbolId a = g.left(j);
            if (next_free[a] == 0 || next_free[a] < cnt[j]) malformed("inconsistent induction at rule " + std::to_string(j));
            next_free[j] = next_free[a];
            next_free[a] -= cnt[j];
            if (order[next_free[a]] != kNullSymbol) malformed("rank assigned twice at rule " + std::to_string(j));
            order[next_free[a]] = j;
        }
    }

    out.perm.assign(n + 1, kNullSymbol);
    out.inv_perm.assign(n + 1, kNullSymbol);
    for (std::size_t k = 0; k < n; ++k) {
        out.perm[order[k]] = static_cast<SymbolId>(k + 1);
        out.inv_perm[k + 1] = order[k];
    }
    out.grammar = permute(g, out.perm);
    out.iterations = iterations;
    return out;
}

FirstSymbolForest first_symbol_forest(const SortedGrammar& sg) {
    const Grammar& g = sg.grammar;
    const std::size_t n = g.size();
    const std::vector<std::uint64_t> cnt = count_prefix_symbols(g);
    FirstSymbolForest f;
    f.lo.assign(n + 1, kNullSymbol);
    f.hi.assign(n + 1, kNullSymbol);
    f.parent.assign(n + 1, kNullSymbol);
    for (SymbolId i = 1; i <= n; ++i) {
        f.lo[i] = i;
        f.hi[i] = static_cast<SymbolId>(i + cnt[i] - 1);
        f.parent[i] = g.is_terminal(i) ? kNullSymbol : g.left(i);
    }
    return f;
}

}  // namespace lgbwt
