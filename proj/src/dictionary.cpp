#include "lgbwt/dictionary.hpp"

#include <algorithm>

#include "lgbwt/error.hpp"

namespace lgbwt {

namespace {

inline std::uint64_t pair_key(SymbolId a, SymbolId b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace

/// Open-addressing table with linear probing; key 0 marks an empty slot
/// (pair keys always have a non-null left id).
struct Dictionary::Shard {
    mutable std::mutex mutex;
    std::vector<std::uint64_t> keys;
    std::vector<SymbolId> values;
    std::size_t used = 0;

    std::size_t probe(std::uint64_t key, std::uint64_t h) const {
        const std::size_t mask = keys.size() - 1;
        std::size_t pos = static_cast<std::size_t>(h) & mask;
        while (keys[pos] != 0 && keys[pos] != key) pos = (pos + 1) & mask;
        return pos;
    }

    void grow() {
        std::vector<std::uint64_t> old_keys(keys.empty() ? 64 : keys.size() * 2, 0);
        std::vector<SymbolId> old_values(old_keys.size(), 0);
        old_keys.swap(keys);
        old_values.swap(values);
        for (std::size_t i = 0; i < old_keys.size(); ++i) {
            if (old_keys[i] == 0) continue;
            const std::size_t pos = probe(old_keys[i], detail::mix64(old_keys[i]));
            keys[pos] = old_keys[i];
            values[pos] = old_values[i];
        }
    }
};

Dictionary::Dictionary() : shards_(new Shard[kShards]) {
    for (auto& t : byte_terminals_) t.store(kNullSymbol, std::memory_order_relaxed);
}

Dictionary::~Dictionary() = default;

SymbolId Dictionary::allocate(const SymbolInfo& info) {
    const std::uint32_t id = next_id_.fetch_add(1, std::memory_order_acq_rel);
    if (id == 0) throw Error(ErrorCode::TooLarge, "symbol id space exhausted");
    info_.ensure(id) = info;
    return id;
}

SymbolId Dictionary::terminal(ExtChar c) {
    if (c.is_byte()) {
        const SymbolId cached = byte_terminals_[c.value()].load(std::memory_order_acquire);
        if (cached != kNullSymbol) return cached;
    }
    std::lock_guard lock(terminal_mutex_);
    auto it = terminals_.find(c.code());
    if (it != terminals_.end()) return it->second;
    SymbolInfo info;
    info.len = 1;
    info.first_char = c;
    info.last_char = c;
    const SymbolId id = allocate(info);
    terminals_.emplace(c.code(), id);
    if (c.is_byte()) byte_terminals_[c.value()].store(id, std::memory_order_release);
    return id;
}

std::optional<SymbolId> Dictionary::find_terminal(ExtChar c) const {
    std::lock_guard lock(terminal_mutex_);
    auto it = terminals_.find(c.code());
    if (it == terminals_.end()) return std::nullopt;
    return it->second;
}

SymbolId Dictionary::pair(SymbolId a, SymbolId b) {
    const std::uint64_t key = pair_key(a, b);
    const std::uint64_t h = detail::mix64(key);
    Shard& shard = shards_[h >> (64 - kShardBits)];
    std::lock_guard lock(shard.mutex);
    if (shard.keys.empty()) shard.grow();
    std::size_t pos = shard.probe(key, h);
    if (shard.keys[pos] == key) return shard.values[pos];

    const SymbolInfo& ia = info_[a];
    const SymbolInfo& ib = info_[b];
    SymbolInfo info;
    info.left = a;
    info.right = b;
    info.height = 1 + std::max(ia.height, ib.height);
    info.len = ia.len + ib.len;
    info.first_char = ia.first_char;
    info.last_char = ib.last_char;
    const SymbolId id = allocate(info);

    if (2 * (shard.used + 1) > shard.keys.size()) {
        shard.grow();
        pos = shard.probe(key, h);
    }
    shard.keys[pos] = key;
    shard.values[pos] = id;
    ++shard.used;
    return id;
}

std::optional<SymbolId> Dictionary::find_pair(SymbolId a, SymbolId b) const {
    const std::uint64_t key = pair_key(a, b);
    const std::uint64_t h = detail::mix64(key);
    const Shard& shard = shards_[h >> (64 - kShardBits)];
    std::lock_guard lock(shard.mutex);
    if (shard.keys.empty()) return std::nullopt;
    const std::size_t pos = shard.probe(key, h);
    if (shard.keys[pos] != key) return std::nullopt;
    return shard.values[pos];
}

Grammar Dictionary::extract(std::span<const SymbolId> roots) const {
    const std::size_t n = size();
    std::vector<SymbolId> new_id(n + 1, kNullSymbol);
    std::vector<SymbolId> stack(roots.begin(), roots.end());
    while (!stack.empty()) {
        const SymbolId x = stack.back();
        stack.pop_back();
        if (x == kNullSymbol || x > n) throw Error(ErrorCode::MalformedGrammar, "root is not a dictionary symbol");
        if (new_id[x] != kNullSymbol) continue;
        new_id[x] = 1;  // mark
        if (!is_terminal(x)) {
            stack.push_back(left(x));
            stack.push_back(right(x));
        }
    }
    std::vector<Rule> rules{Rule{}};
    for (SymbolId old = 1; old <= n; ++old) {
        if (new_id[old] == kNullSymbol) continue;
        new_id[old] = static_cast<SymbolId>(rules.size());
        const SymbolInfo& si = info_[old];
        if (si.left == kNullSymbol) {
            rules.push_back(Rule::terminal(si.first_char));
        } else {
            rules.push_back(Rule::pair(new_id[si.left], new_id[si.right]));
        }
    }
    Grammar g;
    g.assign(std::move(rules));
    g.roots.reserve(roots.size());
    for (SymbolId r : roots) g.roots.push_back(new_id[r]);
    return g;
}

struct HeavyTable::Shard {
    struct SeqHash {
        std::size_t operator()(const std::vector<SymbolId>& v) const { return static_cast<std::size_t>(HeavyTable::hash(v)); }
    };
    mutable std::mutex mutex;
    std::unordered_map<std::vector<SymbolId>, SymbolId, SeqHash> map;
};

HeavyTable::HeavyTable() : shards_(new Shard[kShards]) {}
HeavyTable::~HeavyTable() = default;

std::uint64_t HeavyTable::hash(std::span<const SymbolId> key) {
    std::uint64_t h = detail::mix64(key.size() + 0x9e3779b97f4a7c15ULL);
    for (SymbolId id : key) h = detail::mix64(h ^ id);
    return h;
}

std::optional<SymbolId> HeavyTable::find(std::span<const SymbolId> key) const {
    const Shard& shard = shards_[hash(key) % kShards];
    std::vector<SymbolId> probe(key.begin(), key.end());
    std::lock_guard lock(shard.mutex);
    auto it = shard.map.find(probe);
    if (it == shard.map.end()) return std::nullopt;
    return it->second;
}

void HeavyTable::insert(std::span<const SymbolId> key, SymbolId value) {
    Shard& shard = shards_[hash(key) % kShards];
    std::vector<SymbolId> k(key.begin(), key.end());
    std::lock_guard lock(shard.mutex);
    shard.map.emplace(std::move(k), value);
}

std::size_t HeavyTable::size() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < kShards; ++i) {
        std::lock_guard lock(shards_[i].mutex);
        n += shards_[i].map.size();
    }
    return n;
}

}  // namespace lgbwt
