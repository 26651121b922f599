#include "lgbwt/ordered_markers.hpp"

#include <string>

namespace lgbwt {

OrderList::Handle OrderList::make_node() {
    const Handle h = static_cast<Handle>(left_.size());
    left_.push_back(kNil);
    right_.push_back(kNil);
    parent_.push_back(kNil);
    size_.push_back(1);
    priority_.push_back(next_priority());
    return h;
}

std::uint32_t OrderList::next_priority() {
    // xorshift64*
    rng_state_ ^= rng_state_ >> 12;
    rng_state_ ^= rng_state_ << 25;
    rng_state_ ^= rng_state_ >> 27;
    return static_cast<std::uint32_t>((rng_state_ * 0x2545f4914f6cdd1dULL) >> 32);
}

void OrderList::update(Handle t) {
    std::uint32_t s = 1;
    if (left_[t] != kNil) {
        s += size_[left_[t]];
        parent_[left_[t]] = t;
    }
    if (right_[t] != kNil) {
        s += size_[right_[t]];
        parent_[right_[t]] = t;
    }
    size_[t] = s;
}

std::pair<OrderList::Handle, OrderList::Handle> OrderList::split(Handle t, std::size_t k) {
    if (t == kNil) return {kNil, kNil};
    const std::size_t left_size = left_[t] == kNil ? 0 : size_[left_[t]];
    if (k <= left_size) {
        auto [a, b] = split(left_[t], k);
        left_[t] = b;
        update(t);
        if (a != kNil) parent_[a] = kNil;
        return {a, t};
    }
    auto [a, b] = split(right_[t], k - left_size - 1);
    right_[t] = a;
    update(t);
    if (b != kNil) parent_[b] = kNil;
    return {t, b};
}

OrderList::Handle OrderList::merge(Handle a, Handle b) {
    if (a == kNil) return b;
    if (b == kNil) return a;
    if (priority_[a] > priority_[b]) {
        right_[a] = merge(right_[a], b);
        update(a);
        return a;
    }
    left_[b] = merge(a, left_[b]);
    update(b);
    return b;
}

void OrderList::insert_before(Handle target, Handle node) {
    const std::size_t k = target == kNil ? size() : rank(target);
    auto [a, b] = split(root_, k);
    root_ = merge(merge(a, node), b);
    parent_[root_] = kNil;
}

std::size_t OrderList::rank(Handle node) const {
    std::size_t r = left_[node] == kNil ? 0 : size_[left_[node]];
    Handle x = node;
    while (parent_[x] != kNil) {
        const Handle p = parent_[x];
        if (right_[p] == x) r += 1 + (left_[p] == kNil ? 0 : size_[left_[p]]);
        x = p;
    }
    return r;
}

std::vector<OrderList::Handle> OrderList::sequence() const {
    std::vector<Handle> out;
    out.reserve(size());
    std::vector<Handle> stack;
    Handle cur = root_;
    while (cur != kNil || !stack.empty()) {
        while (cur != kNil) {
            stack.push_back(cur);
            cur = left_[cur];
        }
        cur = stack.back();
        stack.pop_back();
        out.push_back(cur);
        cur = right_[cur];
    }
    return out;
}

void OrderedMarkerIndex::reserve_symbol(SymbolId s) {
    if (s >= open_.size()) {
        const std::size_t n = std::max<std::size_t>(s + 1, open_.size() * 2);
        open_.resize(n, OrderList::kNil);
        close_.resize(n, OrderList::kNil);
        right_of_.resize(n, kNullSymbol);
        children_.resize(n);
    }
}

void OrderedMarkerIndex::place(SymbolId s, OrderList::Handle target) {
    const auto open = list_.make_node();
    const auto close = list_.make_node();
    owner_.push_back(s);
    owner_.push_back(s);
    list_.insert_before(target, open);
    list_.insert_before(target, close);
    open_[s] = open;
    close_[s] = close;
    ++count_;
}

void OrderedMarkerIndex::insert_terminal(SymbolId s, ExtChar c) {
    if (contains(s)) return;
    reserve_symbol(s);
    auto next = terminals_.upper_bound(c);
    const OrderList::Handle target = next == terminals_.end() ? OrderList::kNil : open_[next->second];
    place(s, target);
    terminals_.emplace(c, s);
}

void OrderedMarkerIndex::insert_pair(SymbolId s, SymbolId a, SymbolId b) {
    if (contains(s)) return;
    if (!contains(a) || !contains(b)) {
        throw Error(ErrorCode::ChildrenNotIndexed, "children of symbol " + std::to_string(s) + " are not indexed");
    }
    reserve_symbol(s);
    std::vector<SymbolId>& siblings = children_[a];
    const std::size_t rank_b = list_.rank(open_[b]);
    // first sibling whose right child is lexicographically larger than b
    std::size_t lo = 0;
    std::size_t hi = siblings.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (list_.rank(open_[right_of_[siblings[mid]]]) > rank_b) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    const OrderList::Handle target = lo < siblings.size() ? open_[siblings[lo]] : close_[a];
    place(s, target);
    right_of_[s] = b;
    siblings.insert(siblings.begin() + static_cast<std::ptrdiff_t>(lo), s);
}

std::size_t OrderedMarkerIndex::rank(SymbolId s) const {
    if (!contains(s)) throw Error(ErrorCode::SymbolNotIndexed, "symbol " + std::to_string(s) + " is not indexed");
    return list_.rank(open_[s]);
}

std::strong_ordering OrderedMarkerIndex::compare(SymbolId t, SymbolId c) const {
    if (t == c) {
        if (!contains(t)) throw Error(ErrorCode::SymbolNotIndexed, "symbol " + std::to_string(t) + " is not indexed");
        return std::strong_ordering::equal;
    }
    return rank(t) <=> rank(c);
}

std::vector<OrderedMarkerIndex::Marker> OrderedMarkerIndex::markers() const {
    std::vector<Marker> out;
    for (auto h : list_.sequence()) out.push_back(Marker{h % 2 == 0, owner_[h]});
    return out;
}

}  // namespace lgbwt
