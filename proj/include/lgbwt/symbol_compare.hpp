#pragma once

#include <compare>

#include "lgbwt/error.hpp"
#include "lgbwt/grammar.hpp"

namespace lgbwt {

namespace detail {

template <class View>
ExtChar first_char_of(const View& g, SymbolId x) {
    if constexpr (requires { g.first_char(x); }) {
        return g.first_char(x);
    } else {
        while (!g.is_terminal(x)) x = g.left(x);
        return g.terminal_char(x);
    }
}

}  // namespace detail

/// Lexicographic comparison of val(t) and val(c) without expanding either.
///
/// `View` exposes is_terminal/left/right/terminal_char over a grammar in
/// which every rule X_i -> X_a X_b has a, b < i and distinct symbols generate
/// distinct strings (both hold for grammars grown through a Dictionary).
///
/// Two pointers descend the leftmost paths of t and c, always stepping down
/// from the larger id, until they meet at the longest common prefix symbol.
/// The order is then decided by the right siblings just above that meeting
/// point, or by prefix containment. Cost is bounded by the heights.
template <class View>
std::strong_ordering compare_symbols_naive(const View& g, SymbolId t, SymbolId c) {
    for (;;) {
        if (t == c) return std::strong_ordering::equal;
        const ExtChar ft = detail::first_char_of(g, t);
        const ExtChar fc = detail::first_char_of(g, c);
        if (ft != fc) return ft < fc ? std::strong_ordering::less : std::strong_ordering::greater;

        SymbolId l = t;
        SymbolId r = c;
        SymbolId l_sibling = kNullSymbol;
        SymbolId r_sibling = kNullSymbol;
        while (l != r) {
            // The larger id cannot be the common prefix symbol, so step down from it.
            // Equal first characters guarantee a common terminal exists.
            if (l > r) {
                if (g.is_terminal(l)) throw Error(ErrorCode::MalformedGrammar, "symbol ids are not in creation order");
                l_sibling = g.right(l);
                l = g.left(l);
            } else {
                if (g.is_terminal(r)) throw Error(ErrorCode::MalformedGrammar, "symbol ids are not in creation order");
                r_sibling = g.right(r);
                r = g.left(r);
            }
        }
        if (l_sibling == kNullSymbol) return std::strong_ordering::less;    // val(t) is a proper prefix of val(c)
        if (r_sibling == kNullSymbol) return std::strong_ordering::greater; // val(c) is a proper prefix of val(t)
        t = l_sibling;
        c = r_sibling;
    }
}

}  // namespace lgbwt
