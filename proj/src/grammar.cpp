#include "lgbwt/grammar.hpp"

#include <algorithm>
#include <string>

#include "lgbwt/error.hpp"

namespace lgbwt {

SymbolId Grammar::add_terminal(ExtChar c) {
    rules_.push_back(Rule::terminal(c));
    len_.push_back(1);
    last_char_.push_back(c);
    height_.push_back(0);
    return static_cast<SymbolId>(rules_.size() - 1);
}

SymbolId Grammar::add_pair(SymbolId a, SymbolId b) {
    const SymbolId next = static_cast<SymbolId>(rules_.size());
    if (a == kNullSymbol || b == kNullSymbol || a >= next || b >= next) {
        throw Error(ErrorCode::MalformedGrammar, "pair references an undefined symbol");
    }
    rules_.push_back(Rule::pair(a, b));
    len_.push_back(len_[a] + len_[b]);
    last_char_.push_back(last_char_[b]);
    height_.push_back(1 + std::max(height_[a], height_[b]));
    return next;
}

void Grammar::assign(std::vector<Rule> rules_one_based) {
    rules_ = std::move(rules_one_based);
    if (rules_.empty()) rules_.push_back(Rule{});
    recompute_metadata();
}

void Grammar::recompute_metadata() {
    const std::size_t n = rules_.size();
    len_.assign(n, 0);
    last_char_.assign(n, ExtChar{});
    height_.assign(n, 0);

    for (std::size_t i = 1; i < n; ++i) {
        const Rule& r = rules_[i];
        if (!r.is_terminal() && (r.right == kNullSymbol || r.left >= n || r.right >= n)) {
            throw Error(ErrorCode::MalformedGrammar, "dangling symbol reference in rule " + std::to_string(i));
        }
    }

    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<std::uint8_t> state(n, 0);
    std::vector<SymbolId> stack;
    for (SymbolId start = 1; start < n; ++start) {
        if (state[start] == 2) continue;
        stack.push_back(start);
        while (!stack.empty()) {
            const SymbolId x = stack.back();
            const Rule& r = rules_[x];
            if (state[x] == 2) {
                stack.pop_back();
                continue;
            }
            if (r.is_terminal()) {
                len_[x] = 1;
                last_char_[x] = r.ch;
                height_[x] = 0;
                state[x] = 2;
                stack.pop_back();
                continue;
            }
            if (state[x] == 0) {
                state[x] = 1;
                for (SymbolId child : {r.left, r.right}) {
                    if (state[child] == 1) throw Error(ErrorCode::MalformedGrammar, "cyclic rule at symbol " + std::to_string(x));
                    if (state[child] == 0) stack.push_back(child);
                }
                continue;
            }
            // state 1: children are done
            len_[x] = len_[r.left] + len_[r.right];
            last_char_[x] = last_char_[r.right];
            height_[x] = 1 + std::max(height_[r.left], height_[r.right]);
            state[x] = 2;
            stack.pop_back();
        }
    }
}

ExtString expand(const Grammar& g, SymbolId x, std::uint64_t cap) {
    if (x == kNullSymbol || x > g.size()) throw Error(ErrorCode::MalformedGrammar, "expand of undefined symbol");
    if (g.len(x) > cap) {
        throw Error(ErrorCode::ExpansionTooLarge, "expansion of length " + std::to_string(g.len(x)) + " exceeds cap");
    }
    ExtString out;
    out.reserve(g.len(x));
    std::vector<SymbolId> stack{x};
    while (!stack.empty()) {
        const SymbolId s = stack.back();
        stack.pop_back();
        const Rule& r = g.rule(s);
        if (r.is_terminal()) {
            out.push_back(r.ch);
        } else {
            stack.push_back(r.right);
            stack.push_back(r.left);
        }
    }
    return out;
}

ExtString expand_roots(const Grammar& g, std::uint64_t cap) {
    std::uint64_t total = 0;
    for (SymbolId r : g.roots) total += g.len(r);
    if (total > cap) throw Error(ErrorCode::ExpansionTooLarge, "expansion of roots exceeds cap");
    ExtString out;
    out.reserve(total);
    for (SymbolId r : g.roots) {
        auto part = expand(g, r, cap);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Grammar permute(const Grammar& g, std::span<const SymbolId> perm) {
    std::vector<Rule> rules(g.size() + 1);
    for (SymbolId old = 1; old <= g.size(); ++old) {
        Rule r = g.rule(old);
        if (!r.is_terminal()) {
            r.left = perm[r.left];
            r.right = perm[r.right];
        }
        rules[perm[old]] = r;
    }
    Grammar out;
    out.assign(std::move(rules));
    out.roots.reserve(g.roots.size());
    for (SymbolId r : g.roots) out.roots.push_back(perm[r]);
    return out;
}

}  // namespace lgbwt
