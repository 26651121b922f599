#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "lgbwt/error.hpp"
#include "lgbwt/ext_char.hpp"
#include "lgbwt/grammar.hpp"

namespace lgbwt {

/// Order-maintenance list: a randomized implicit treap with parent links.
/// insert_before and rank are O(log n) expected.
class OrderList {
public:
    using Handle = std::uint32_t;
    static constexpr Handle kNil = std::numeric_limits<Handle>::max();

    explicit OrderList(std::uint64_t seed = 0x2545f4914f6cdd1dULL) : rng_state_(seed) {}

    Handle make_node();
    /// Inserts `node` immediately before `target`; kNil appends at the end.
    void insert_before(Handle target, Handle node);
    std::size_t rank(Handle node) const;
    std::size_t size() const { return root_ == kNil ? 0 : size_[root_]; }
    std::vector<Handle> sequence() const;

private:
    std::uint32_t next_priority();
    void update(Handle t);
    std::pair<Handle, Handle> split(Handle t, std::size_t k);
    Handle merge(Handle a, Handle b);

    std::vector<Handle> left_;
    std::vector<Handle> right_;
    std::vector<Handle> parent_;
    std::vector<std::uint32_t> size_;
    std::vector<std::uint32_t> priority_;
    Handle root_ = kNil;
    std::uint64_t rng_state_;
};

/// Symbols kept in lexicographic order of their generated strings as the
/// balanced parenthesis sequence of the first-symbol forest. Each symbol
/// owns an opening and a closing marker; the rank of the opening marker is
/// the symbol's lexicographic rank among indexed symbols.
class OrderedMarkerIndex {
public:
    bool contains(SymbolId s) const { return s < open_.size() && open_[s] != OrderList::kNil; }

    void insert_terminal(SymbolId s, ExtChar c);

    /// Inserts X_s -> X_a X_b. Its pair goes right before the opening marker
    /// of the smallest sibling X_j -> X_a X_c with val(X_c) > val(X_b), or
    /// right before X_a's closing marker when there is none.
    void insert_pair(SymbolId s, SymbolId a, SymbolId b);

    std::strong_ordering compare(SymbolId t, SymbolId c) const;
    std::size_t rank(SymbolId s) const;
    std::size_t size() const { return count_; }

    struct Marker {
        bool open;
        SymbolId symbol;
        bool operator==(const Marker&) const = default;
    };
    std::vector<Marker> markers() const;

    /// Indexes `s` and, first, any of its descendants that are missing.
    template <class View>
    void ensure_indexed(const View& g, SymbolId s) {
        if (contains(s)) return;
        std::vector<SymbolId> stack{s};
        while (!stack.empty()) {
            const SymbolId x = stack.back();
            if (contains(x)) {
                stack.pop_back();
                continue;
            }
            if (g.is_terminal(x)) {
                insert_terminal(x, g.terminal_char(x));
                stack.pop_back();
                continue;
            }
            const SymbolId a = g.left(x);
            const SymbolId b = g.right(x);
            if (contains(a) && contains(b)) {
                insert_pair(x, a, b);
                stack.pop_back();
                continue;
            }
            if (!contains(a)) stack.push_back(a);
            if (!contains(b)) stack.push_back(b);
        }
    }

private:
    void reserve_symbol(SymbolId s);
    void place(SymbolId s, OrderList::Handle target);

    OrderList list_;
    std::vector<OrderList::Handle> open_;
    std::vector<OrderList::Handle> close_;
    std::vector<SymbolId> right_of_;
    std::vector<std::vector<SymbolId>> children_;  // T_a, sorted lexicographically
    std::vector<SymbolId> owner_;                  // handle -> symbol
    std::map<ExtChar, SymbolId> terminals_;
    std::size_t count_ = 0;
};

}  // namespace lgbwt
