#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lgbwt/ext_char.hpp"

namespace lgbwt {

/// Dense symbol identifier; 0 is the null symbol.
using SymbolId = std::uint32_t;
inline constexpr SymbolId kNullSymbol = 0;

/// A production: terminal (left == 0, `ch` set) or pair (left, right).
struct Rule {
    SymbolId left = kNullSymbol;
    SymbolId right = kNullSymbol;
    ExtChar ch{};

    static Rule terminal(ExtChar c) { return Rule{kNullSymbol, kNullSymbol, c}; }
    static Rule pair(SymbolId a, SymbolId b) { return Rule{a, b, ExtChar{}}; }

    bool is_terminal() const { return left == kNullSymbol; }
    bool operator==(const Rule&) const = default;
};

inline constexpr std::uint64_t kDefaultExpansionCap = std::uint64_t{1} << 20;

/// Lyndon straight-line program. Symbols are 1..size(); `roots` lists the
/// start symbols left to right. For a single text the roots are its Lyndon
/// factorization; for a collection they are the concatenated per-record
/// factorizations.
class Grammar {
public:
    Grammar() = default;

    SymbolId add_terminal(ExtChar c);
    SymbolId add_pair(SymbolId a, SymbolId b);

    std::size_t size() const { return rules_.size() - 1; }
    const Rule& rule(SymbolId id) const { return rules_[id]; }
    std::span<const Rule> rules() const { return {rules_.data() + 1, size()}; }

    bool is_terminal(SymbolId id) const { return rules_[id].is_terminal(); }
    SymbolId left(SymbolId id) const { return rules_[id].left; }
    SymbolId right(SymbolId id) const { return rules_[id].right; }
    ExtChar terminal_char(SymbolId id) const { return rules_[id].ch; }

    std::uint64_t len(SymbolId id) const { return len_[id]; }
    ExtChar last_char(SymbolId id) const { return last_char_[id]; }
    std::uint32_t height(SymbolId id) const { return height_[id]; }

    std::vector<SymbolId> roots;

    /// Size in the SLP sense: production rules plus start symbols.
    std::size_t slp_size() const { return size() + roots.size(); }

    /// Recomputes len/last_char/height for arbitrary id order. Throws
    /// Error(MalformedGrammar) on dangling ids or cycles.
    void recompute_metadata();

    /// Replaces all rules; metadata is recomputed.
    void assign(std::vector<Rule> rules_one_based);

    bool operator==(const Grammar& other) const { return rules_ == other.rules_ && roots == other.roots; }

private:
    std::vector<Rule> rules_{Rule{}};
    std::vector<std::uint64_t> len_{0};
    std::vector<ExtChar> last_char_{ExtChar{}};
    std::vector<std::uint32_t> height_{0};
};

/// val(x). Throws Error(ExpansionTooLarge) if len(x) exceeds `cap`.
ExtString expand(const Grammar& g, SymbolId x, std::uint64_t cap = kDefaultExpansionCap);

/// Concatenation of val(root) over all roots.
ExtString expand_roots(const Grammar& g, std::uint64_t cap = kDefaultExpansionCap);

/// Renames symbols by `perm` (old id -> new id, index 0 ignored).
Grammar permute(const Grammar& g, std::span<const SymbolId> perm);

}  // namespace lgbwt
