#pragma once

#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lgbwt/ext_char.hpp"
#include "lgbwt/grammar.hpp"

namespace lgbwt {

/// Per-symbol metadata kept by the dictionary.
struct SymbolInfo {
    SymbolId left = kNullSymbol;  // kNullSymbol for terminals
    SymbolId right = kNullSymbol;
    std::uint32_t height = 0;
    std::uint64_t len = 0;
    ExtChar first_char{};
    ExtChar last_char{};
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Append-only array with stable element addresses. Chunk k holds
/// 2^(k + kBaseBits) elements, so a 32-entry directory spans the whole
/// 32-bit id space. Chunks are published with release/acquire, so readers
/// of an index handed out by another thread never race with growth.
template <class T>
class ChunkedArray {
public:
    static constexpr unsigned kBaseBits = 10;
    static constexpr std::size_t kChunks = 32;

    ChunkedArray() {
        for (auto& c : dir_) c.store(nullptr, std::memory_order_relaxed);
    }
    ~ChunkedArray() {
        for (auto& c : dir_) delete[] c.load(std::memory_order_relaxed);
    }
    ChunkedArray(const ChunkedArray&) = delete;
    ChunkedArray& operator=(const ChunkedArray&) = delete;

    T& ensure(std::size_t idx) {
        const auto [chunk_idx, offset] = locate(idx);
        std::atomic<T*>& slot = dir_[chunk_idx];
        T* chunk = slot.load(std::memory_order_acquire);
        if (chunk == nullptr) {
            T* fresh = new T[std::size_t{1} << (chunk_idx + kBaseBits)]();
            if (slot.compare_exchange_strong(chunk, fresh, std::memory_order_acq_rel)) {
                chunk = fresh;
            } else {
                delete[] fresh;
            }
        }
        return chunk[offset];
    }

    const T& operator[](std::size_t idx) const {
        const auto [chunk_idx, offset] = locate(idx);
        return dir_[chunk_idx].load(std::memory_order_acquire)[offset];
    }

private:
    static std::pair<std::size_t, std::size_t> locate(std::size_t idx) {
        const std::size_t v = idx + (std::size_t{1} << kBaseBits);
        const std::size_t chunk_idx = static_cast<std::size_t>(std::bit_width(v)) - 1 - kBaseBits;
        return {chunk_idx, v - (std::size_t{1} << (chunk_idx + kBaseBits))};
    }

    std::array<std::atomic<T*>, kChunks> dir_;
};

}  // namespace detail

/// Naming function of the Lyndon SLP: injective insert-or-get from
/// (left, right) pairs and from terminal characters to dense symbol ids.
///
/// Safe for concurrent use. A key always maps to exactly one id no matter
/// how many threads race on it. Ids are drawn from an atomic counter, so a
/// pair's id is always larger than the ids of its two children.
class Dictionary {
public:
    Dictionary();
    ~Dictionary();
    Dictionary(const Dictionary&) = delete;
    Dictionary& operator=(const Dictionary&) = delete;

    SymbolId terminal(ExtChar c);
    SymbolId pair(SymbolId a, SymbolId b);
    std::optional<SymbolId> find_pair(SymbolId a, SymbolId b) const;
    std::optional<SymbolId> find_terminal(ExtChar c) const;

    /// Number of symbols created so far (ids are 1..size()).
    std::size_t size() const { return next_id_.load(std::memory_order_acquire) - 1; }

    const SymbolInfo& info(SymbolId id) const { return info_[id]; }
    bool is_terminal(SymbolId id) const { return info_[id].left == kNullSymbol; }
    SymbolId left(SymbolId id) const { return info_[id].left; }
    SymbolId right(SymbolId id) const { return info_[id].right; }
    ExtChar terminal_char(SymbolId id) const { return info_[id].first_char; }
    ExtChar first_char(SymbolId id) const { return info_[id].first_char; }
    std::uint64_t len(SymbolId id) const { return info_[id].len; }

    /// Copies out the sub-grammar reachable from `roots`, renumbered densely
    /// in increasing id order (so children keep smaller ids than parents).
    Grammar extract(std::span<const SymbolId> roots) const;

private:
    struct Shard;
    static constexpr std::size_t kShardBits = 6;
    static constexpr std::size_t kShards = std::size_t{1} << kShardBits;

    SymbolId allocate(const SymbolInfo& info);

    std::unique_ptr<Shard[]> shards_;
    std::atomic<std::uint32_t> next_id_{1};
    detail::ChunkedArray<SymbolInfo> info_;

    std::array<std::atomic<SymbolId>, 256> byte_terminals_{};
    mutable std::mutex terminal_mutex_;
    std::unordered_map<std::uint64_t, SymbolId> terminals_;
};

/// Second-level table for heavy nodes: maps the sequence of immediate heavy
/// descendants of a node to the node's symbol. Safe for concurrent use.
class HeavyTable {
public:
    HeavyTable();
    ~HeavyTable();

    std::optional<SymbolId> find(std::span<const SymbolId> key) const;
    void insert(std::span<const SymbolId> key, SymbolId value);
    std::size_t size() const;

    /// Length-prefixed hash of an id sequence.
    static std::uint64_t hash(std::span<const SymbolId> key);

private:
    struct Shard;
    static constexpr std::size_t kShards = 64;
    std::unique_ptr<Shard[]> shards_;
};

}  // namespace lgbwt
