#pragma once

#include <cstdint>
#include <vector>

#include "lgbwt/grammar.hpp"

namespace lgbwt {

/// A grammar renamed so that id order is the lexicographic order of the
/// expansions. `perm` maps old ids to new ids and `inv_perm` back; index 0
/// is unused in both.
struct SortedGrammar {
    Grammar grammar;
    std::vector<SymbolId> perm;
    std::vector<SymbolId> inv_perm;
    /// Loop iterations spent by the induction, for the linear-time check.
    std::uint64_t iterations = 0;
};

/// Per-symbol number of symbols whose leftmost path passes through it
/// (the symbol itself included). Index 0 is unused.
std::vector<std::uint64_t> count_prefix_symbols(const Grammar& g);

/// Sorts a Lyndon SLP in time linear in its size. Throws
/// Error(MalformedGrammar) on cycles, dangling ids, duplicate right-hand
/// sides or anything that makes the induction inconsistent.
SortedGrammar sort_grammar(const Grammar& g);

/// Forest where the parent of X -> A B is A. In a sorted grammar the
/// symbols below X occupy the rank interval [lo[X], hi[X]].
struct FirstSymbolForest {
    std::vector<SymbolId> lo;
    std::vector<SymbolId> hi;
    std::vector<SymbolId> parent;  // kNullSymbol for terminals
};

FirstSymbolForest first_symbol_forest(const SortedGrammar& sg);

}  // namespace lgbwt
